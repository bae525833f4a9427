#include "app.hpp"

#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "branchcover/cover.hpp"
#include "branchcover/errors.hpp"
#include "branchcover/orbit.hpp"
#include "branchcover/spaceform.hpp"
#include "json.hpp"
#include "result_cache.hpp"
#include "run_config.hpp"

namespace branchcover::cli {

namespace {

using nlohmann::ordered_json;

struct GlobalFlags {
  std::string config;
  std::string format;
  std::size_t cap = 0;
  std::size_t workers = 0;
  std::optional<std::uint64_t> seed;
  bool timings = false;
  bool no_cache = false;
};

struct KnotInput {
  std::string pd, dt, braid, montesinos, name;
  std::vector<int> torus;
  std::vector<long long> two_bridge;

  // (format, text, default name)
  std::tuple<std::string, std::string, std::string> pick() const {
    std::vector<std::tuple<std::string, std::string, std::string>> given;
    if (!pd.empty()) given.emplace_back("pd", pd, "pd-input");
    if (!dt.empty()) given.emplace_back("dt", dt, "dt-input");
    if (!braid.empty()) given.emplace_back("braid", braid, "braid-input");
    if (!montesinos.empty()) given.emplace_back("montesinos", montesinos, "montesinos-input");
    if (!torus.empty())
      given.emplace_back("torus", std::to_string(torus[0]) + " " + std::to_string(torus[1]),
                         "torus-" + std::to_string(torus[0]) + "-" + std::to_string(torus[1]));
    if (!two_bridge.empty())
      given.emplace_back("two-bridge", std::to_string(two_bridge[0]) + " " + std::to_string(two_bridge[1]),
                         "two-bridge-" + std::to_string(two_bridge[0]) + "-" + std::to_string(two_bridge[1]));
    if (given.size() != 1) throw ValidationError("give exactly one of --pd, --dt, --braid, --torus, --two-bridge, --montesinos");
    return given.front();
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--pd", pd, "PD code, \"[(1,4,2,5),(3,6,4,1),(5,2,6,3)]\"");
    cmd->add_option("--dt", dt, "DT code, \"4 6 2\"");
    cmd->add_option("--braid", braid, "braid word, \"strands=n a b ...\"");
    cmd->add_option("--torus", torus, "torus knot parameters p q")->expected(2);
    cmd->add_option("--two-bridge", two_bridge, "two-bridge parameters p q")->expected(2);
    cmd->add_option("--montesinos", montesinos, "\"e; b1/a1 b2/a2 ...\"");
    cmd->add_option("--name", name, "report name");
  }
};

std::string fixed(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

void emit_reports(std::ostream& out, const std::vector<cover::CoverReport>& reports, OutputFormat f) {
  switch (f) {
    case OutputFormat::Json:
      for (const auto& r : reports) out << cover::to_json_line(r) << '\n';
      break;
    case OutputFormat::Csv:
      out << cover::to_csv(reports);
      break;
    case OutputFormat::Table:
      out << cover::to_table(reports);
      break;
  }
}

cover::AnalysisOptions analysis_options(const RunConfig& c) { return {c.coset_cap, c.timings}; }

int knot_analyze(const RunConfig& config, const KnotInput& input, std::ostream& out, std::ostream& err) {
  knot::KnotDiagram diagram = knot::KnotDiagram::unknot();
  std::string name;
  try {
    auto [format, text, fallback] = input.pick();
    name = input.name.empty() ? fallback : input.name;
    diagram = cover::diagram_from_input(format, text);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  cover::CoverReport report;
  try {
    report = cover::analyze(diagram, name, analysis_options(config));
  } catch (const InternalInconsistency& e) {
    err << "violation: " << e.what() << '\n';
    return kViolation;
  } catch (const UnclassifiedFiniteGroup& e) {
    err << "violation: " << e.what() << '\n';
    return kViolation;
  }
  emit_reports(out, {report}, config.format);
  return report.order_consistent ? kOk : kViolation;
}

int knot_gen(const RunConfig& config, const KnotInput& input, std::ostream& out, std::ostream& err) {
  try {
    auto [format, text, fallback] = input.pick();
    const std::string name = input.name.empty() ? fallback : input.name;
    const auto d = cover::diagram_from_input(format, text);
    std::string braid;
    if (format == "torus") braid = knot::torus_knot(input.torus[0], input.torus[1]).to_string();
    switch (config.format) {
      case OutputFormat::Json: {
        ordered_json j;
        j["schema"] = "branchcover.diagram/1";
        j["name"] = name;
        j["crossings"] = d.crossing_count();
        j["writhe"] = d.writhe();
        j["pd"] = d.to_pd_string();
        if (!braid.empty()) j["braid"] = braid;
        out << j.dump() << '\n';
        break;
      }
      case OutputFormat::Csv:
        out << "name,crossings,writhe,pd\n"
            << name << ',' << d.crossing_count() << ',' << d.writhe() << ",\"" << d.to_pd_string() << "\"\n";
        break;
      case OutputFormat::Table:
        out << "name: " << name << "\ncrossings: " << d.crossing_count() << "\nwrithe: " << d.writhe()
            << "\npd: " << d.to_pd_string() << '\n';
        if (!braid.empty()) out << "braid: " << braid << '\n';
        break;
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

spaceform::SpaceFormSpec make_spec(const std::string& family, std::int64_t m, std::int64_t p, std::int64_t k) {
  if (family == "cyclic") return spaceform::Cyclic{m, p};
  if (family == "tetrahedral") return spaceform::Tetrahedral{m, k};
  if (family == "icosahedral") return spaceform::Icosahedral{m};
  throw ValidationError("family must be cyclic, tetrahedral or icosahedral");
}

void emit_certificate(std::ostream& out, const spaceform::SpaceFormCertificate& cert,
                      const spaceform::VerificationReport& report, OutputFormat f) {
  switch (f) {
    case OutputFormat::Table:
      out << spaceform::serialize(cert, report);
      break;
    case OutputFormat::Json: {
      ordered_json j;
      std::istringstream lines(spaceform::serialize(cert, report));
      std::string line;
      while (std::getline(lines, line)) {
        const auto colon = line.find(": ");
        if (colon != std::string::npos) j[line.substr(0, colon)] = line.substr(colon + 2);
      }
      out << j.dump() << '\n';
      break;
    }
    case OutputFormat::Csv:
      out << "spec,check,name,passed,detail,witness\n";
      for (const auto& c : report.checks)
        out << '"' << spaceform::describe(cert.spec) << "\"," << c.number << ',' << c.name << ','
            << (c.passed ? "true" : "false") << ",\"" << c.detail << "\",\"" << c.witness << "\"\n";
      break;
  }
}

int spaceform_verify(const RunConfig& config, const std::string& family, std::int64_t m, std::int64_t p,
                     std::int64_t k, std::ostream& out, std::ostream& err) {
  try {
    const auto spec = make_spec(family, m, p, k);
    const auto cert = spaceform::build(spec, config.group_cap);
    const auto report = spaceform::verify(cert);
    emit_certificate(out, cert, report, config.format);
    if (!report.all_passed()) {
      for (const auto& c : report.checks)
        if (!c.passed) err << "check " << c.number << " failed: " << c.detail << " (witness: " << c.witness << ")\n";
      return kCheckFailed;
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

int spaceform_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  bool all = true;
  std::vector<std::vector<std::string>> rows{{"spec", "pi_hat", "pi", "abelianization", "passed", "verdict"}};
  for (const auto& spec : spaceform::default_sweep()) {
    try {
      const auto cert = spaceform::build(spec, config.group_cap);
      const auto report = spaceform::verify(cert);
      int passed = 0;
      for (const auto& c : report.checks) passed += c.passed;
      all = all && report.all_passed();
      rows.push_back({spaceform::describe(spec), std::to_string(cert.pi_hat.order()), std::to_string(cert.pi.order()),
                      cert.abelianization.to_string(), std::to_string(passed) + "/" + std::to_string(report.checks.size()),
                      report.all_passed() ? "pass" : "FAIL"});
    } catch (const Error& e) {
      all = false;
      err << "error: " << spaceform::describe(spec) << ": " << e.what() << '\n';
      rows.push_back({spaceform::describe(spec), "-", "-", "-", "0/7", "ERROR"});
    }
  }
  if (config.format == OutputFormat::Table) {
    std::vector<std::size_t> width(rows.front().size(), 0);
    for (const auto& r : rows)
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    for (const auto& r : rows) {
      std::string line;
      for (std::size_t c = 0; c < r.size(); ++c) {
        line += r[c];
        if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
      }
      out << line << '\n';
    }
  } else if (config.format == OutputFormat::Csv) {
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << '"' << r[c] << '"';
      out << '\n';
    }
  } else {
    for (std::size_t i = 1; i < rows.size(); ++i) {
      ordered_json j;
      j["schema"] = "branchcover.sweep/1";
      for (std::size_t c = 0; c < rows[i].size(); ++c) j[rows[0][c]] = rows[i][c];
      out << j.dump() << '\n';
    }
  }
  out << (config.format == OutputFormat::Json ? "" : std::string("verdict: ") + (all ? "pass" : "FAIL") + "\n");
  return all ? kOk : kCheckFailed;
}

int orbit_profile(const std::vector<int>& weights, std::size_t grid, bool doubled, std::ostream& out, std::ostream& err) {
  try {
    const auto action = orbit::WeightedAction::make(weights.at(0), weights.at(1));
    std::vector<orbit::RevolutionProfile> profiles{orbit::profile(action)};
    if (doubled) profiles.push_back(orbit::branched_double(action));
    out << orbit::profile_csv(profiles, grid);
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

int orbit_compare(const RunConfig& config, const std::vector<int>& chain, const std::vector<int>& doubling,
                  const std::vector<int>& pair, std::size_t grid, std::ostream& out, std::ostream& err) {
  using orbit::profile;
  using orbit::WeightedAction;
  std::vector<std::pair<orbit::RevolutionProfile, orbit::RevolutionProfile>> comparisons;
  try {
    if (!chain.empty()) {
      const auto a = WeightedAction::make(chain[0], chain[1]);
      comparisons.emplace_back(profile({1, 1}), profile(WeightedAction::make(a.k, 1)));
      comparisons.emplace_back(profile(WeightedAction::make(a.k, 1)), profile(a));
    }
    if (!doubling.empty()) {
      const auto a = WeightedAction::make(doubling[0], doubling[1]);
      comparisons.emplace_back(profile({1, 1}), orbit::branched_double(a));
    }
    if (!pair.empty())
      comparisons.emplace_back(profile(WeightedAction::make(pair[0], pair[1])),
                               profile(WeightedAction::make(pair[2], pair[3])));
    if (comparisons.empty()) throw ValidationError("give --chain K L, --doubling K L or --pair K1 L1 K2 L2");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  bool all = true;
  out << "comparison,grid,dominated,max_violation,witness_t\n";
  for (const auto& [a, b] : comparisons) {
    const auto c = orbit::compare(a, b, grid, config.tolerances.grid);
    all = all && c.dominated;
    out << '"' << a.name() << ">=" << b.name() << "\"," << c.grid << ',' << (c.dominated ? "true" : "false") << ','
        << fixed(c.max_violation, "%.6e") << ',' << fixed(c.witness_t, "%.12f") << '\n';
  }
  return all ? kOk : kCheckFailed;
}

int orbit_validate(const RunConfig& config, const std::vector<int>& weights, std::size_t samples,
                   std::ostream& out, std::ostream& err) {
  orbit::WeightedAction action;
  try {
    action = orbit::WeightedAction::make(weights.at(0), weights.at(1));
    if (samples < 1) throw ValidationError("--samples must be at least 1");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  const auto name = orbit::profile(action).name();
  out << "profile,samples,seed,max_discrepancy,gate,verdict\n";
  try {
    const auto r = orbit::validate_profile(action, samples, config.seed, config.tolerances.oracle_gate);
    out << '"' << name << "\"," << samples << ',' << config.seed << ',' << fixed(r.max_discrepancy, "%.6e") << ','
        << fixed(config.tolerances.oracle_gate, "%.1e") << ",accepted\n";
    return kOk;
  } catch (const OracleMismatch& e) {
    out << '"' << name << "\"," << samples << ',' << config.seed << ',' << fixed(e.discrepancy(), "%.6e") << ','
        << fixed(config.tolerances.oracle_gate, "%.1e") << ",rejected\n";
    err << "oracle mismatch: " << e.what() << '\n';
    return kCheckFailed;
  }
}

int corpus_run(const RunConfig& config, bool use_cache, std::ostream& out, std::ostream& err) {
  std::vector<cover::CorpusRow> rows;
  try {
    rows = cover::load_corpus(config.corpus.string());
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  ResultCache cache(use_cache ? config.cache : std::filesystem::path{});
  const auto analyzer = [&](const cover::CorpusRow& row, const cover::AnalysisOptions& options) {
    const auto key = ResultCache::key(row.name, row.format, row.input, options.coset_cap, options.timings);
    if (auto hit = cache.get(key)) return cover::from_json_line(*hit);
    auto report = cover::analyze_row(row, options);
    cache.put(key, cover::to_json_line(report));
    return report;
  };
  const auto result = cover::run_corpus(rows, analysis_options(config), config.workers, analyzer);
  try {
    cache.save();
  } catch (const std::exception& e) {
    err << "warning: cache not saved: " << e.what() << '\n';
  }

  emit_reports(out, result.reports, config.format);
  for (const auto& e : result.errors) err << "row error " << e.name << ": " << e.message << '\n';
  for (const auto& m : result.expectation_mismatches) err << "mismatch " << m << '\n';
  if (config.format == OutputFormat::Json) {
    ordered_json j;
    j["schema"] = "branchcover.corpus-summary/1";
    j["reports"] = result.reports.size();
    j["errors"] = result.errors.size();
    j["violations"] = result.violations();
    j["mismatches"] = result.expectation_mismatches.size();
    out << j.dump() << '\n';
  } else {
    std::ostream& summary = config.format == OutputFormat::Csv ? err : out;
    if (config.format == OutputFormat::Table) summary << '\n';
    summary << "reports: " << result.reports.size() << '\n'
            << "errors: " << result.errors.size() << '\n'
            << "violations: " << result.violations() << '\n'
            << "mismatches: " << result.expectation_mismatches.size() << '\n';
  }
  if (result.violations() > 0 || !result.expectation_mismatches.empty()) return kViolation;
  if (!result.errors.empty()) return kRowErrors;
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Branched double covers, spherical space forms and orbit-space geometry", "branchcover"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--config", g.config, "config file (default: $BRANCHCOVER_CONFIG or config/default.conf)");
  app.add_option("--format", g.format, "json, csv or table");
  app.add_option("--cap", g.cap, "coset enumeration cap");
  app.add_option("--workers", g.workers, "worker threads for corpus runs");
  app.add_option("--seed", g.seed, "seed for randomised checks");
  app.add_flag("--timings", g.timings, "record wall-clock timings in reports");
  app.add_flag("--no-cache", g.no_cache, "ignore and do not update the result cache");

  auto* knot_cmd = app.add_subcommand("knot", "knot diagrams and their branched double covers");
  knot_cmd->require_subcommand(1);
  knot_cmd->footer(
      "Input grammars:\n"
      "  PD     optional outer brackets around comma-separated 4-tuples (a,b,c,d), [a,b,c,d] or X[a,b,c,d]\n"
      "         of positive edge labels, listed counterclockwise from the incoming under-edge; [] is the unknot\n"
      "  DT     nonzero even integers separated by spaces or commas, one per odd label 1, 3, 5, ...;\n"
      "         a negative entry puts the even-labelled passage over\n"
      "  braid  \"strands=n\" followed by nonzero integers; i is sigma_i and -i its inverse\n"
      "  montesinos  \"e; b1/a1 b2/a2 ...\" with a_i >= 1 and gcd(a_i, b_i) = 1");
  KnotInput analyze_input, gen_input;
  auto* analyze_cmd = knot_cmd->add_subcommand("analyze", "run the cover pipeline on one diagram");
  analyze_input.attach(analyze_cmd);
  auto* gen_cmd = knot_cmd->add_subcommand("gen", "print the diagram of a generated knot");
  gen_input.attach(gen_cmd);

  auto* sf_cmd = app.add_subcommand("spaceform", "spherical space forms and their involutions");
  sf_cmd->require_subcommand(1);
  std::string family;
  std::int64_t m = 1, p = 1, k = 0;
  auto* verify_cmd = sf_cmd->add_subcommand("verify", "build one space form and run the seven checks");
  verify_cmd->add_option("family", family, "cyclic, tetrahedral or icosahedral")->required();
  verify_cmd->add_option("--m", m, "order parameter m");
  verify_cmd->add_option("--p", p, "cyclic weight p");
  verify_cmd->add_option("--k", k, "tetrahedral exponent k");
  auto* sweep_cmd = sf_cmd->add_subcommand("sweep", "verify every space form in the default sweep");

  auto* orbit_cmd = app.add_subcommand("orbit", "orbit spaces of weighted circle actions on S^3");
  orbit_cmd->require_subcommand(1);
  std::vector<int> profile_weights, validate_weights, chain, doubling, pair;
  std::size_t grid = 101, compare_grid = 10000, samples = 100;
  bool doubled = false;
  auto* profile_cmd = orbit_cmd->add_subcommand("profile", "tabulate the profile of S(k,l) as CSV");
  profile_cmd->add_option("weights", profile_weights, "k l")->expected(2)->required();
  profile_cmd->add_option("--grid", grid, "number of sample points");
  profile_cmd->add_flag("--doubled", doubled, "add the doubled profile");
  auto* compare_cmd = orbit_cmd->add_subcommand("compare", "pointwise profile domination");
  compare_cmd->add_option("--chain", chain, "k l: S(1,1) >= S(k,1) >= S(k,l)")->expected(2);
  compare_cmd->add_option("--doubling", doubling, "k l: S(1,1) >= 2 S(k,l)")->expected(2);
  compare_cmd->add_option("--pair", pair, "k1 l1 k2 l2: S(k1,l1) >= S(k2,l2)")->expected(4);
  compare_cmd->add_option("--grid", compare_grid, "number of grid points");
  auto* validate_cmd = orbit_cmd->add_subcommand("validate", "check the profile against orbit distances");
  validate_cmd->add_option("weights", validate_weights, "k l")->expected(2)->required();
  validate_cmd->add_option("--samples", samples, "random orbit pairs");

  auto* corpus_cmd = app.add_subcommand("corpus", "knot corpus runs");
  corpus_cmd->require_subcommand(1);
  std::string corpus_path;
  auto* corpus_run_cmd = corpus_cmd->add_subcommand("run", "analyse every corpus row");
  corpus_run_cmd->add_option("--corpus", corpus_path, "corpus file (default from config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help on a subcommand.
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  RunConfig config;
  try {
    config = RunConfig::resolve(g.config);
    if (!g.format.empty()) config.format = parse_format(g.format);
    if (g.cap) config.coset_cap = g.cap;
    if (g.workers) config.workers = g.workers;
    if (g.seed) config.seed = *g.seed;
    if (g.timings) config.timings = true;
    if (!corpus_path.empty()) config.corpus = corpus_path;
    config.check();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  if (analyze_cmd->parsed()) return knot_analyze(config, analyze_input, out, err);
  if (gen_cmd->parsed()) return knot_gen(config, gen_input, out, err);
  if (verify_cmd->parsed()) return spaceform_verify(config, family, m, p, k, out, err);
  if (sweep_cmd->parsed()) return spaceform_sweep(config, out, err);
  if (profile_cmd->parsed()) return orbit_profile(profile_weights, grid, doubled, out, err);
  if (compare_cmd->parsed()) return orbit_compare(config, chain, doubling, pair, compare_grid, out, err);
  if (validate_cmd->parsed()) return orbit_validate(config, validate_weights, samples, out, err);
  if (corpus_run_cmd->parsed()) return corpus_run(config, !g.no_cache, out, err);
  err << "error: no command\n";
  return kInputError;
}

}  // namespace branchcover::cli
