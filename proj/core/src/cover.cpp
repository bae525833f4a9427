#include "branchcover/cover.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "branchcover/errors.hpp"
#include "json.hpp"

namespace branchcover::cover {

using nlohmann::ordered_json;

std::string Classification::to_string() const {
  switch (type) {
    case CoverType::Unknot: return "Unknot";
    case CoverType::Cyclic: return "CyclicType{" + std::to_string(n) + "}";
    case CoverType::Tetrahedral: return "TetrahedralType";
    case CoverType::Icosahedral: return "IcosahedralType";
    case CoverType::InfiniteOrUnknown: return "InfiniteOrUnknown";
  }
  return "?";
}

Classification Classification::parse(std::string_view text) {
  if (text == "Unknot") return {CoverType::Unknot, 0};
  if (text == "TetrahedralType") return {CoverType::Tetrahedral, 0};
  if (text == "IcosahedralType") return {CoverType::Icosahedral, 0};
  if (text == "InfiniteOrUnknown") return {CoverType::InfiniteOrUnknown, 0};
  constexpr std::string_view prefix = "CyclicType{";
  if (text.starts_with(prefix) && text.ends_with("}")) {
    const std::string digits(text.substr(prefix.size(), text.size() - prefix.size() - 1));
    std::size_t used = 0;
    long long n = 0;
    try {
      n = std::stoll(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == digits.size() && n >= 1) return {CoverType::Cyclic, n};
  }
  throw ParseError("unknown classification '" + std::string(text) + "'", 0);
}

Classification classify_finite(const groups::FiniteGroup& g, const groups::Subgroup& h) {
  if (h.is_trivial()) return {CoverType::Unknot, 0};
  if (groups::is_abelian(g, h)) {
    const auto ab = groups::abelianization(g, h);
    if (!ab.is_cyclic())
      throw InternalInconsistency("abelian cover group " + ab.to_string() + " is not cyclic");
    return {CoverType::Cyclic, static_cast<std::int64_t>(h.order())};
  }
  const auto series = groups::derived_series(g, h);
  const auto& last = series.back();
  if (last.is_trivial()) return {CoverType::Tetrahedral, 0};
  if (last.order() == 120) return {CoverType::Icosahedral, 0};
  throw UnclassifiedFiniteGroup("derived series of a group of order " + std::to_string(h.order()) +
                                " stabilises at a perfect subgroup of order " + std::to_string(last.order()));
}

CoverReport analyze(const knot::KnotDiagram& diagram, std::string name, const AnalysisOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  CoverReport r;
  r.name = std::move(name);
  r.h1 = knot::h1_double_cover(diagram);
  r.determinant = r.h1.is_finite() ? r.h1.torsion_order() : 0;
  if (r.determinant % 2 == 0)
    throw InternalInconsistency("knot diagram with even determinant " + std::to_string(r.determinant));

  const auto orbifold = pres::orbifold_quotient(pres::wirtinger(diagram));
  const auto outcome = pres::todd_coxeter(orbifold, options.coset_cap);
  if (const auto* fin = std::get_if<pres::Finite>(&outcome)) {
    r.orbifold_order = fin->order;
    const auto cover = pres::branched_cover_group(orbifold, *fin);
    r.cover_order = cover.order;
    r.cover_abelianization = groups::abelianization(fin->action, cover.kernel);
    for (const auto& s : groups::derived_series(fin->action, cover.kernel)) r.derived_series.push_back(s.order());
    if (r.cover_abelianization != r.h1)
      throw InternalInconsistency("cover abelianization " + r.cover_abelianization->to_string() +
                                  " differs from the coloring-matrix homology " + r.h1.to_string());
    r.classification = classify_finite(fin->action, cover.kernel);
    if (r.classification.type == CoverType::Tetrahedral && r.derived_series.size() > 1 && r.derived_series[1] != 8)
      r.advisory = "commutator subgroup has order " + std::to_string(r.derived_series[1]) + ", expected 8";
    r.order_consistent = *r.cover_order != 2 && (*r.cover_order != 1 || r.determinant == 1);
  } else {
    r.classification = {CoverType::InfiniteOrUnknown, 0};
    r.order_consistent = true;
  }
  if (options.timings)
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

std::vector<long long> integers(std::string_view text, std::string_view what) {
  std::istringstream in{std::string(text)};
  std::vector<long long> out;
  long long v = 0;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw ParseError("expected integers for " + std::string(what), static_cast<std::size_t>(std::max<std::streamoff>(0, in.tellg())));
  return out;
}

knot::KnotDiagram montesinos_from_text(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw ParseError("expected 'e; b/a ...'", 0);
  const auto e = integers(text.substr(0, semi), "montesinos");
  if (e.size() != 1) throw ParseError("expected a single twist count", 0);
  std::vector<knot::Fraction> fractions;
  std::istringstream in{std::string(text.substr(semi + 1))};
  std::string token;
  while (in >> token) {
    const auto slash = token.find('/');
    if (slash == std::string::npos) throw ParseError("expected a fraction b/a, got '" + token + "'", semi + 1);
    try {
      fractions.push_back({std::stoll(token.substr(0, slash)), std::stoll(token.substr(slash + 1))});
    } catch (const std::logic_error&) {
      throw ParseError("bad fraction '" + token + "'", semi + 1);
    }
  }
  return knot::montesinos(e[0], fractions);
}

}  // namespace

knot::KnotDiagram diagram_from_input(std::string_view format, std::string_view text) {
  if (format == "pd") return knot::parse_pd(text);
  if (format == "dt") return knot::parse_dt(text);
  if (format == "braid") return knot::braid_closure(knot::parse_braid(text));
  if (format == "torus" || format == "two-bridge") {
    const auto v = integers(text, format);
    if (v.size() != 2) throw ParseError("expected two integers", 0);
    if (format == "two-bridge") return knot::two_bridge(v[0], v[1]);
    if (std::llabs(v[0]) > 1000 || std::llabs(v[1]) > 1000) throw SpecViolation("torus parameters too large");
    return knot::braid_closure(knot::torus_knot(static_cast<int>(v[0]), static_cast<int>(v[1])));
  }
  if (format == "montesinos") return montesinos_from_text(text);
  throw ParseError("unknown input format '" + std::string(format) + "'", 0);
}

std::vector<CorpusRow> parse_corpus(std::istream& in) {
  std::vector<CorpusRow> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, '\t')) fields.push_back(f);
    if (fields.size() < 3 || fields.size() > 4)
      throw ParseError("corpus line needs 3 or 4 tab-separated fields", number);
    CorpusRow row{fields[0], fields[1], fields[2], std::nullopt};
    if (fields.size() == 4 && !fields[3].empty()) row.expect = Classification::parse(fields[3]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CorpusRow> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open corpus file " + path);
  return parse_corpus(in);
}

std::size_t CorpusResult::violations() const {
  std::size_t n = 0;
  for (const auto& r : reports) {
    const bool order_two = r.cover_order && *r.cover_order == 2;
    if (!r.order_consistent || order_two || r.determinant % 2 == 0) ++n;
  }
  if (any_unknot_mismatch) ++n;
  return n;
}

CoverReport analyze_row(const CorpusRow& row, const AnalysisOptions& options) {
  return analyze(diagram_from_input(row.format, row.input), row.name, options);
}

CorpusResult run_corpus(const std::vector<CorpusRow>& rows, const AnalysisOptions& options, std::size_t workers,
                        const RowAnalyzer& analyzer) {
  std::vector<std::optional<CoverReport>> done(rows.size());
  std::vector<std::optional<std::string>> failed(rows.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      try {
        done[i] = analyzer(rows[i], options);
      } catch (const std::exception& e) {
        failed[i] = e.what();
      }
    }
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(rows.size(), 1));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  CorpusResult out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (failed[i]) {
      out.errors.push_back({rows[i].name, *failed[i]});
      continue;
    }
    const auto& r = *done[i];
    out.any_order_violation |= !r.order_consistent;
    out.any_even_determinant |= r.determinant % 2 == 0;
    out.any_order_two |= r.cover_order && *r.cover_order == 2;
    if (const auto& expect = rows[i].expect) {
      const bool trivial = r.cover_order && *r.cover_order == 1;
      if (trivial != (expect->type == CoverType::Unknot)) out.any_unknot_mismatch = true;
      if (*expect != r.classification)
        out.expectation_mismatches.push_back(r.name + ": expected " + expect->to_string() + ", got " +
                                             r.classification.to_string());
    }
    out.reports.push_back(r);
  }
  std::sort(out.reports.begin(), out.reports.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  std::sort(out.errors.begin(), out.errors.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  std::sort(out.expectation_mismatches.begin(), out.expectation_mismatches.end());
  return out;
}

namespace {

exact::AbelianGroup parse_abelian(std::string_view text) {
  if (text == "trivial") return {};
  std::vector<exact::BigInt> diag;
  std::size_t free_rank = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(" x ", pos);
    if (end == std::string_view::npos) end = text.size();
    const auto part = text.substr(pos, end - pos);
    if (part == "Z") ++free_rank;
    else if (part.starts_with("Z/")) diag.emplace_back(std::string(part.substr(2)));
    else throw ParseError("bad abelian group '" + std::string(text) + "'", pos);
    pos = end + 3;
  }
  return exact::AbelianGroup::from_diagonal(diag, free_rank);
}

ordered_json optional_number(const std::optional<std::size_t>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_ms(const std::optional<double>& ms) {
  if (!ms) return "-";
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << *ms;
  return os.str();
}

std::vector<std::string> row_cells(const CoverReport& r) {
  return {r.name,
          std::to_string(r.determinant),
          r.h1.to_string(),
          r.orbifold_order ? std::to_string(*r.orbifold_order) : "inconclusive",
          r.cover_order ? std::to_string(*r.cover_order) : "inconclusive",
          r.classification.to_string(),
          r.order_consistent ? "true" : "false",
          format_ms(r.ms)};
}

const std::vector<std::string> kColumns = {"name", "det", "h1", "orbifold_order", "cover_order",
                                           "classification", "order_consistent", "ms"};

}  // namespace

std::string to_json_line(const CoverReport& r) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["name"] = r.name;
  j["det"] = r.determinant;
  j["h1"] = r.h1.to_string();
  j["orbifold_order"] = optional_number(r.orbifold_order);
  j["cover_order"] = optional_number(r.cover_order);
  j["classification"] = r.classification.to_string();
  j["order_consistent"] = r.order_consistent;
  j["ms"] = r.ms ? ordered_json(*r.ms) : ordered_json(nullptr);
  j["cover_h1"] = r.cover_abelianization ? ordered_json(r.cover_abelianization->to_string()) : ordered_json(nullptr);
  j["derived_series"] = r.derived_series;
  j["advisory"] = r.advisory;
  return j.dump();
}

CoverReport from_json_line(std::string_view line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  if (j.value("schema", "") != kReportSchema) throw ValidationError("report has an unknown schema tag");
  try {
    CoverReport r;
    r.name = j.at("name").get<std::string>();
    r.determinant = j.at("det").get<std::int64_t>();
    r.h1 = parse_abelian(j.at("h1").get<std::string>());
    if (!j.at("orbifold_order").is_null()) r.orbifold_order = j["orbifold_order"].get<std::size_t>();
    if (!j.at("cover_order").is_null()) r.cover_order = j["cover_order"].get<std::size_t>();
    r.classification = Classification::parse(j.at("classification").get<std::string>());
    r.order_consistent = j.at("order_consistent").get<bool>();
    if (!j.at("ms").is_null()) r.ms = j["ms"].get<double>();
    if (!j.at("cover_h1").is_null()) r.cover_abelianization = parse_abelian(j["cover_h1"].get<std::string>());
    r.derived_series = j.at("derived_series").get<std::vector<std::size_t>>();
    r.advisory = j.at("advisory").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed report: ") + e.what());
  }
}

std::string to_csv(const std::vector<CoverReport>& reports) {
  std::ostringstream os;
  for (std::size_t c = 0; c < kColumns.size(); ++c) os << (c ? "," : "") << kColumns[c];
  os << '\n';
  for (const auto& r : reports) {
    const auto cells = row_cells(r);
    for (std::size_t c = 0; c < cells.size(); ++c) os << (c ? "," : "") << csv_field(cells[c]);
    os << '\n';
  }
  return os.str();
}

std::string to_table(const std::vector<CoverReport>& reports) {
  std::vector<std::vector<std::string>> grid{kColumns};
  for (const auto& r : reports) grid.push_back(row_cells(r));
  std::vector<std::size_t> width(kColumns.size(), 0);
  for (const auto& row : grid)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  for (const auto& row : grid) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    os << line << '\n';
  }
  return os.str();
}

}  // namespace branchcover::cover
