#include <numeric>

#include "branchcover/errors.hpp"
#include "branchcover/knot.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace branchcover;
using namespace branchcover::knot;

namespace {

constexpr const char* kTrefoilPd = "[(1,4,2,5),(3,6,4,1),(5,2,6,3)]";

void check_arc_degrees(const KnotDiagram& d) {
  std::vector<int> seen(d.edge_count() + 1, 0);
  for (const auto& c : d.crossings())
    for (int e : c.pd) {
      REQUIRE(e >= 1);
      REQUIRE(static_cast<std::size_t>(e) <= d.edge_count());
      ++seen[e];
    }
  if (d.crossing_count() > 0)
    for (std::size_t e = 1; e <= d.edge_count(); ++e) CHECK(seen[e] == 2);
}

}  // namespace

TEST_SUITE("knot") {

TEST_CASE("three trefoil input routes agree") {
  const auto pd = parse_pd(kTrefoilPd);
  const auto dt = parse_dt("4 6 2");
  const auto braid = braid_closure(parse_braid("strands=2 1 1 1"));
  CHECK(pd.crossing_count() == 3);
  for (const auto* d : {&pd, &dt, &braid}) {
    check_arc_degrees(*d);
    CHECK(determinant(*d) == 3);
    CHECK(h1_double_cover(*d) == exact::AbelianGroup::cyclic(3));
    CHECK(std::abs(d->writhe()) == 3);
  }
  CHECK(braid_closure(torus_knot(2, 3)).crossing_count() == 3);
}

TEST_CASE("PD round trip and grammar variants") {
  const auto d = parse_pd(kTrefoilPd);
  CHECK(d.to_pd_string() == kTrefoilPd);
  CHECK(parse_pd(d.to_pd_string()).to_pd_string() == kTrefoilPd);
  CHECK(parse_pd("X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]").to_pd_string() == kTrefoilPd);
  CHECK(parse_pd("[]").crossing_count() == 0);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(parse_pd("[(1,4,2,5),(3,6,4,1),(5,2,6"), ParseError);
  CHECK_THROWS_AS(parse_pd("[(1,4,2,5),(3,6,4,1)]"), ValidationError);
  CHECK_THROWS_AS(parse_dt("4 6 3"), ParseError);
  CHECK_THROWS_AS(parse_braid("1 1 1"), ParseError);
  CHECK_THROWS_AS(parse_braid("strands=2 1 2"), ParseError);
  CHECK(braid_closure(parse_braid("strands=1")).crossing_count() == 0);
  try {
    parse_pd("[(1,4,2,5),(3,6,4,1),(5,2,6,x)]");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() > 0);
  }
}

TEST_CASE("torus knots") {
  const auto b = torus_knot(3, 5);
  CHECK(b.strands == 3);
  CHECK(b.letters.size() == 10);
  CHECK_THROWS_AS(torus_knot(2, 4), NotAKnot);
  CHECK_THROWS_AS(braid_closure(BraidWord{2, {1, 1}}), NotAKnot);
  CHECK_THROWS_AS(torus_knot(1, 3), SpecViolation);
  for (int n : {3, 5, 7, 9}) CHECK(determinant(braid_closure(torus_knot(2, n))) == n);
  CHECK(determinant(braid_closure(torus_knot(3, 4))) == 3);
  CHECK(determinant(braid_closure(torus_knot(3, 5))) == 1);
}

TEST_CASE("two-bridge knots have determinant p") {
  CHECK(determinant(two_bridge(3, 1)) == 3);
  CHECK(determinant(two_bridge(5, 3)) == 5);
  CHECK(two_bridge(1, 1).crossing_count() <= 1);
  CHECK(determinant(two_bridge(1, 1)) == 1);
  for (std::int64_t p = 3; p <= 25; p += 2)
    for (std::int64_t q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const auto d = two_bridge(p, q);
      check_arc_degrees(d);
      CHECK(determinant(d) == p);
      CHECK(h1_double_cover(d) == exact::AbelianGroup::cyclic(p));
    }
  CHECK_THROWS_AS(two_bridge(4, 1), SpecViolation);
  CHECK_THROWS_AS(two_bridge(9, 3), SpecViolation);
  CHECK_THROWS_AS(two_bridge(5, 7), SpecViolation);
}

TEST_CASE("Montesinos assembly") {
  for (auto [p, q] : {std::pair{7, 3}, {5, 3}, {15, 4}, {9, 2}}) {
    const Fraction single[] = {{p, q}};
    CHECK(determinant(montesinos(0, single)) == determinant(two_bridge(p, q)));
  }
  const Fraction seven_thirds[] = {{3, 7}};
  CHECK(determinant(montesinos(0, seven_thirds)) == 3);
  CHECK(montesinos(1, std::span<const Fraction>{}).crossing_count() <= 1);
  CHECK(determinant(montesinos(1, std::span<const Fraction>{})) == 1);
  const Fraction poincare[] = {{1, 2}, {1, 3}, {1, 5}};
  const auto d = montesinos(-1, poincare);
  check_arc_degrees(d);
  CHECK(determinant(d) == 1);
  const Fraction link[] = {{1, 2}, {1, 2}, {1, 3}};
  CHECK_THROWS_AS(montesinos(-1, link), NotAKnot);
  const Fraction bad[] = {{2, 4}};
  CHECK_THROWS_AS(montesinos(0, bad), SpecViolation);
  const Fraction pretzel[] = {{1, 3}, {1, 3}, {1, 3}};
  CHECK(h1_double_cover(montesinos(0, pretzel)).to_string() == "Z/3 x Z/9");
}

TEST_CASE("determinants agree with the Goeritz oracle") {
  const std::vector<KnotDiagram> diagrams = {
      KnotDiagram::unknot(),       parse_pd(kTrefoilPd),         parse_dt("4 6 8 2"),
      parse_dt("6 8 10 2 4"),      parse_dt("4 8 10 2 6"),       parse_dt("4 8 12 10 2 6"),
      parse_dt("6 10 12 14 4 2 8"), parse_dt("4 10 14 12 2 8 6"), braid_closure(torus_knot(3, 4)),
      braid_closure(torus_knot(3, 5)), two_bridge(15, 4),        braid_closure(parse_braid("strands=5 2 -1 3 1 2 3 4 -3 1 -2"))};
  for (const auto& d : diagrams) {
    const auto det = determinant(d);
    CHECK(det == oracle::goeritz_determinant(d));
    CHECK(det % 2 == 1);
    CHECK(h1_double_cover(d).torsion_order() == det);
  }
  CHECK(determinant(parse_dt("4 6 8 2")) == 5);
  CHECK(determinant(parse_dt("6 10 12 14 4 2 8")) == 15);
  CHECK(determinant(parse_dt("4 10 14 12 2 8 6")) == 11);
}

TEST_CASE("unknot") {
  const auto u = KnotDiagram::unknot();
  CHECK(determinant(u) == 1);
  CHECK(h1_double_cover(u).is_trivial());
  CHECK(u.edge_count() == 1);
  CHECK(determinant(braid_closure(parse_braid("strands=4 1 -2 3"))) == 1);
}

TEST_CASE("coloring matrix rows") {
  const auto m = coloring_matrix(parse_pd(kTrefoilPd));
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 3);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    exact::BigInt sum = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) sum += m(r, c);
    CHECK(sum == 0);
  }
}

}
