#include "branchcover/errors.hpp"
#include "branchcover/presentation.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace branchcover;
using namespace branchcover::pres;

namespace {

knot::KnotDiagram trefoil() { return knot::parse_pd("[(1,4,2,5),(3,6,4,1),(5,2,6,3)]"); }
knot::KnotDiagram figure_eight() { return knot::parse_dt("4 6 8 2"); }

std::size_t order_of(const GroupPresentation& p, std::size_t cap = kDefaultCosetCap) {
  const auto outcome = todd_coxeter(p, cap);
  REQUIRE(std::holds_alternative<Finite>(outcome));
  return std::get<Finite>(outcome).order;
}

}  // namespace

TEST_SUITE("presentation") {

TEST_CASE("word helpers") {
  CHECK(free_reduce({1, 2, -2, -1, 3}) == Word{3});
  CHECK(cyclic_reduce({-1, 2, 3, 1}) == Word{2, 3});
  CHECK(inverse({1, -2, 3}) == Word{-3, 2, -1});
  CHECK(exponent_sum({1, 1, -2, 1, -1}, 1) == 2);
}

TEST_CASE("text format round trip") {
  const auto p = GroupPresentation::parse("gens=2; rel= 1 2 -1 -2, 2 2");
  CHECK(p.generators == 2);
  CHECK(p.relators.size() == 2);
  CHECK(GroupPresentation::parse(p.to_string()) == p);
  CHECK_THROWS_AS(GroupPresentation::parse("gens=2; rel= 1 3"), ValidationError);
  CHECK_THROWS_AS(GroupPresentation::parse("gens=x"), ParseError);
  CHECK(GroupPresentation::make(1, {{1, -1}}).relators.empty());
}

TEST_CASE("Wirtinger presentations") {
  const auto u = wirtinger(knot::KnotDiagram::unknot());
  CHECK(u.generators == 1);
  CHECK(u.relators.empty());
  const auto t = wirtinger(trefoil());
  CHECK(t.generators == 3);
  CHECK(t.relators.size() == 2);
  CHECK(abelianize(t).to_string() == "Z");
  const auto f = wirtinger(figure_eight());
  CHECK(f.generators == 4);
  CHECK(f.relators.size() == 3);
  CHECK(abelianize(f).to_string() == "Z");
  for (const auto& r : t.relators) CHECK(r.size() == 4);
}

TEST_CASE("orbifold quotients") {
  CHECK(order_of(orbifold_quotient(wirtinger(knot::KnotDiagram::unknot()))) == 2);
  CHECK(order_of(orbifold_quotient(wirtinger(trefoil()))) == 6);
  CHECK(order_of(orbifold_quotient(wirtinger(figure_eight()))) == 10);
  CHECK(abelianize(orbifold_quotient(wirtinger(trefoil()))) == exact::AbelianGroup::cyclic(2));
}

TEST_CASE("Todd-Coxeter examples") {
  CHECK(order_of(GroupPresentation::parse("gens=2; rel= 1 1, 2 2, 1 2 1 2 1 2")) == 6);
  CHECK(order_of(GroupPresentation::parse("gens=1; rel= 1 1 1 1 1")) == 5);
  const auto free = todd_coxeter(GroupPresentation::make(2, {}), 1000);
  REQUIRE(std::holds_alternative<Inconclusive>(free));
  CHECK(std::get<Inconclusive>(free).cap == 1000);
  CHECK(order_of(GroupPresentation::make(0, {})) == 1);
  CHECK(order_of(GroupPresentation::parse("gens=2; rel= 1, 2")) == 1);
}

TEST_CASE("enumeration is certified and deterministic") {
  const auto p = orbifold_quotient(wirtinger(knot::braid_closure(knot::torus_knot(3, 5))));
  const auto a = todd_coxeter(p);
  const auto b = todd_coxeter(p);
  REQUIRE(std::holds_alternative<Finite>(a));
  const auto& fa = std::get<Finite>(a);
  const auto& fb = std::get<Finite>(b);
  CHECK(fa.order == 240);
  CHECK(certifies(p, fa.action));
  CHECK(fa.stats.defined == fb.stats.defined);
  CHECK(fa.stats.coincidences == fb.stats.coincidences);
  for (const auto& r : p.relators) CHECK(evaluate(fa.action, r) == 0);
  CHECK_FALSE(certifies(GroupPresentation::parse("gens=2; rel= 1 1, 2 2, 1 2 1 2 1 2 1 2"), fa.action));
}

TEST_CASE("small caps are honoured") {
  const auto p = GroupPresentation::parse("gens=2; rel= 1 1, 2 2 2, 1 2 1 2 1 2 1 2 1 2");
  CHECK(std::holds_alternative<Inconclusive>(todd_coxeter(p, 30)));
  CHECK(order_of(p, 60) == 60);
}

TEST_CASE("agreement with word enumeration on ten groups") {
  for (const auto& [name, p] : oracle::small_presentations()) {
    INFO(name);
    const std::size_t tc = order_of(p);
    CHECK(tc <= 60);
    CHECK(oracle::word_enumeration_order(p) == tc);
  }
}

TEST_CASE("branched cover groups") {
  auto cover = [](const knot::KnotDiagram& d) {
    const auto orb = orbifold_quotient(wirtinger(d));
    const auto outcome = todd_coxeter(orb);
    const auto& f = std::get<Finite>(outcome);
    auto bc = branched_cover_group(orb, f);
    CHECK(bc.order * 2 == f.order);
    CHECK(bc.kernel.order() == bc.order);
    return std::pair{bc, f.action};
  };
  CHECK(cover(knot::KnotDiagram::unknot()).first.order == 1);
  const auto [t, ta] = cover(trefoil());
  CHECK(t.order == 3);
  CHECK(groups::abelianization(ta, t.kernel) == exact::AbelianGroup::cyclic(3));
  const auto [p, pa] = cover(knot::braid_closure(knot::torus_knot(3, 5)));
  CHECK(p.order == 120);
  CHECK(groups::derived_subgroup(pa, p.kernel) == p.kernel);
}

TEST_CASE("cover abelianization matches Reidemeister-Schreier and the determinant") {
  for (const auto& d : {trefoil(), figure_eight(), knot::two_bridge(15, 4), knot::braid_closure(knot::torus_knot(3, 4))}) {
    const auto orb = orbifold_quotient(wirtinger(d));
    const auto outcome = todd_coxeter(orb);
    const auto& f = std::get<Finite>(outcome);
    const auto bc = branched_cover_group(orb, f);
    const auto h = groups::abelianization(f.action, bc.kernel);
    CHECK(h == oracle::reidemeister_schreier_kernel_h1(orb));
    CHECK(h.torsion_order() == knot::determinant(d));
  }
}

TEST_CASE("index-two preconditions") {
  const auto odd = GroupPresentation::parse("gens=1; rel= 1 1 1");
  const auto outcome = todd_coxeter(odd);
  CHECK_THROWS_AS(branched_cover_group(odd, std::get<Finite>(outcome)), NotIndexTwo);
  const auto none = GroupPresentation::make(0, {});
  CHECK_THROWS_AS(branched_cover_group(none, std::get<Finite>(todd_coxeter(none))), NotIndexTwo);
}

}
