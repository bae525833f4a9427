// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "branchcover/cover.hpp"
#include "branchcover/orbit.hpp"
#include "branchcover/rotation_group.hpp"
#include "branchcover/spaceform.hpp"
#include "oracles.hpp"

using namespace branchcover;

namespace {

struct Failure {
  std::string detail;
};

void require(bool ok, const std::string& detail) {
  if (!ok) throw Failure{detail};
}

struct Criterion {
  int number;
  std::string title;
  double time_limit;
  std::function<std::string()> body;
};

const std::vector<cover::CorpusRow>& corpus_rows() {
  static const auto rows = cover::load_corpus(std::string(BRANCHCOVER_SOURCE_DIR) + "/data/corpus.tsv");
  return rows;
}

const cover::CorpusResult& corpus() {
  static const cover::CorpusResult r = [] {
    cover::AnalysisOptions options;
    options.coset_cap = 200000;
    return cover::run_corpus(corpus_rows(), options, 1);
  }();
  return r;
}

std::string binary_icosahedral() {
  const auto gens = oracle::binary_icosahedral_generators();
  const auto g = groups::generate_group(groups::Ambient::Spin4, gens);
  require(g.order() == 120, "closure has order " + std::to_string(g.order()));
  const auto series = groups::derived_series(g);
  require(series.size() == 2 && series[1].order() == 120, "not perfect");
  const auto& e = g.engine();
  const auto all = groups::whole_group(e);
  const auto classes = groups::conjugacy_classes(e, all);
  const groups::Spin4Element minus{-groups::UnitQuaternion(), groups::UnitQuaternion()};
  const groups::Elem minus_index = g.index_of(minus.lifted_to(g.left_conductor(), g.right_conductor()));
  std::size_t proper = 0;
  for (const auto& cls : classes) {
    const auto n = groups::normal_closure(e, all, std::span(cls.data(), 1));
    if (n.order() == 1 || n.order() == 120) continue;
    ++proper;
    require(n.order() == 2 && n.contains(minus_index), "proper normal subgroup of order " + std::to_string(n.order()));
  }
  require(proper == 1, "{+-1} found " + std::to_string(proper) + " times");
  return "order 120, perfect, " + std::to_string(classes.size()) + " classes scanned, only proper normal subgroup {+-1}";
}

std::string corpus_orders() {
  const auto& r = corpus();
  require(r.errors.empty(), std::to_string(r.errors.size()) + " row errors");
  require(r.reports.size() >= 13, "only " + std::to_string(r.reports.size()) + " diagrams");
  std::set<std::string> order_one;
  std::size_t finite = 0;
  for (const auto& rep : r.reports) {
    if (!rep.cover_order) continue;
    ++finite;
    require(*rep.cover_order != 2, rep.name + " has cover order 2");
    if (*rep.cover_order == 1) order_one.insert(rep.name);
    else require(*rep.cover_order >= 3, rep.name + " has cover order " + std::to_string(*rep.cover_order));
  }
  require(order_one == std::set<std::string>{"unknot-round", "unknot-tangled-3", "unknot-tangled-10"},
          "order 1 set differs from the three unknot diagrams");
  return std::to_string(r.reports.size()) + " diagrams, " + std::to_string(finite) +
         " finite, order 1 exactly for the 3 unknots, no order 2";
}

std::string poincare_sphere() {
  const auto rep = cover::analyze(knot::braid_closure(knot::torus_knot(3, 5)), "torus-3-5");
  require(rep.cover_order == 120u, "cover order differs from 120");
  require(rep.cover_abelianization && rep.cover_abelianization->is_trivial(), "abelianization not trivial");
  require(rep.classification.type == cover::CoverType::Icosahedral, rep.classification.to_string());
  return "cover order 120, trivial abelianization, IcosahedralType";
}

std::string determinant_coherence() {
  std::size_t checked = 0;
  for (const auto& rep : corpus().reports) {
    require(rep.determinant % 2 == 1, rep.name + " has even determinant");
    if (!rep.cover_order) continue;
    const auto row = std::find_if(corpus_rows().begin(), corpus_rows().end(),
                                  [&](const cover::CorpusRow& x) { return x.name == rep.name; });
    require(row != corpus_rows().end(), rep.name + " missing from the corpus");
    const auto d = cover::diagram_from_input(row->format, row->input);
    const auto det = knot::determinant(d);
    require(det == rep.cover_abelianization->torsion_order() && rep.cover_abelianization->is_finite(),
            rep.name + ": determinant " + std::to_string(det) + " vs cover H1 " + rep.cover_abelianization->to_string());
    ++checked;
  }
  return std::to_string(checked) + " finite outcomes, determinant = |H1(cover)|, all determinants odd";
}

std::string two_bridge() {
  std::string list;
  for (auto [p, q] : {std::pair{3, 1}, {5, 3}, {7, 3}, {9, 5}, {15, 4}}) {
    const auto rep = cover::analyze(knot::two_bridge(p, q), "two-bridge");
    require(rep.classification == cover::Classification{cover::CoverType::Cyclic, p},
            std::to_string(p) + "/" + std::to_string(q) + " gave " + rep.classification.to_string());
    list += (list.empty() ? "" : " ") + rep.classification.to_string();
  }
  return list;
}

std::string spaceform_sweep() {
  const auto sweep = spaceform::default_sweep();
  std::set<std::string> cases;
  for (const auto& spec : sweep) {
    const auto report = spaceform::verify(spaceform::build(spec));
    for (const auto& c : report.checks)
      require(c.passed, spaceform::describe(spec) + " fails check " + std::to_string(c.number) + ": " + c.detail);
    cases.insert(spaceform::case_name(spec));
  }
  require(sweep.size() >= 12 && cases.size() == 3, "sweep too small");
  const auto control = spaceform::verify(spaceform::build_unchecked(spaceform::Cyclic{4, 1}));
  require(!control.check(2).passed && !control.check(2).witness.empty(), "even-m control passed check 2");
  return std::to_string(sweep.size()) + " specs x 7 checks pass; cyclic m=4 fails check 2 with witness " +
         control.check(2).witness;
}

std::string orbit_geometry() {
  const orbit::Tolerances tol;
  const double pi = std::numbers::pi;
  const auto f11 = orbit::profile(orbit::WeightedAction::make(1, 1));
  std::size_t pairs = 0;
  double worst_cone = 0;
  for (int k = 1; k <= 6; ++k)
    for (int l = 1; l <= k; ++l) {
      if (std::gcd(k, l) != 1) continue;
      ++pairs;
      const auto a = orbit::WeightedAction::make(k, l);
      const auto fk1 = orbit::profile(orbit::WeightedAction::make(k, 1));
      const auto fkl = orbit::profile(a);
      require(orbit::compare(f11, fk1, 10000, tol.grid).dominated, "S(1,1) >= S(k,1) fails");
      require(orbit::compare(fk1, fkl, 10000, tol.grid).dominated, "S(k,1) >= S(k,l) fails");
      if (l >= 2) require(orbit::compare(f11, orbit::branched_double(a), 10000, tol.grid).dominated, "doubling fails");
      const auto [c0, c1] = orbit::cone_angles(fkl);
      worst_cone = std::max({worst_cone, std::abs(c0 - 2 * pi / k), std::abs(c1 - 2 * pi / l)});
    }
  require(worst_cone < tol.cone_angle, "cone angle error " + std::to_string(worst_cone));
  double worst_validation = 0;
  for (auto [k, l] : {std::pair{1, 1}, {2, 1}, {3, 2}})
    worst_validation = std::max(worst_validation,
                                orbit::validate_profile(orbit::WeightedAction::make(k, l), 100, 1, tol.oracle_gate).max_discrepancy);
  std::mt19937_64 rng(1);
  double worst_hopf = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto p = orbit::random_point(rng), q = orbit::random_point(rng);
    worst_hopf = std::max(worst_hopf, std::abs(orbit::orbit_distance(orbit::WeightedAction::make(1, 1), p, q) -
                                                orbit::hopf_distance(p, q)));
  }
  require(worst_hopf < 1e-5, "Hopf discrepancy " + std::to_string(worst_hopf));
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%zu pairs: chain and doubling on 1e4 grids; cone error %.1e; validation %.1e; Hopf %.1e", pairs,
                worst_cone, worst_validation, worst_hopf);
  return buf;
}

std::string oracle_suites() {
  for (const auto& [name, p] : oracle::small_presentations()) {
    const auto outcome = pres::todd_coxeter(p);
    require(std::holds_alternative<pres::Finite>(outcome), name + " inconclusive");
    const auto tc = std::get<pres::Finite>(outcome).order;
    const auto we = oracle::word_enumeration_order(p);
    require(tc <= 60 && tc == we, name + ": " + std::to_string(tc) + " vs " + std::to_string(we));
  }
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    exact::IntegerMatrix m(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) m(r, c) = entry(rng);
    require(exact::smith_normal_form(m).diagonal == oracle::invariant_factors_by_minors(m), "SNF mismatch");
  }
  std::mt19937_64 rot_rng(2024);
  std::size_t circles = 0;
  for (const auto& g : oracle::random_rotations(10000, rot_rng)) {
    const auto dim = groups::fixed_space_dimension(g);
    const bool identity = groups::RotationClass(g).is_identity();
    require(dim == 0 || dim == 2 || dim == 4, "fixed space of dimension " + std::to_string(dim));
    require((dim == 4) == identity, "identity mismatch at " + g.to_string());
    if (!identity) require((dim == 2) == groups::has_fixed_point(g), "criteria disagree at " + g.to_string());
    circles += dim == 2;
  }
  return "10 presentations agree; 100 SNFs agree; 10000 rotation classes agree (" + std::to_string(circles) +
         " with a fixed circle)";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "binary icosahedral group", 5, binary_icosahedral},
      {2, "corpus cover orders", 120, corpus_orders},
      {3, "(3,5)-torus knot cover", 30, poincare_sphere},
      {4, "determinant coherence", 120, determinant_coherence},
      {5, "two-bridge knots are cyclic", 60, two_bridge},
      {6, "space-form sweep", 60, spaceform_sweep},
      {7, "orbit geometry", 60, orbit_geometry},
      {8, "oracle suites", 120, oracle_suites},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.body();
    } catch (const Failure& f) {
      ok = false;
      detail = f.detail;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && seconds >= c.time_limit) {
      ok = false;
      detail += "; exceeded the " + std::to_string(static_cast<int>(c.time_limit)) + " s budget";
    }
    failed += !ok;
    std::printf("%s  [%d] %-30s %7.2f s  %s\n", ok ? "PASS" : "FAIL", c.number, c.title.c_str(), seconds, detail.c_str());
  }
  std::printf("%s: %zu/%zu criteria passed\n", failed ? "FAIL" : "PASS", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
