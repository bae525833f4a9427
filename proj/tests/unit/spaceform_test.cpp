#include <algorithm>

#include "branchcover/errors.hpp"
#include "branchcover/spaceform.hpp"
#include "doctest.h"

using namespace branchcover;
using namespace branchcover::spaceform;

TEST_SUITE("spaceform") {

TEST_CASE("group orders") {
  CHECK(build(Cyclic{3, 1}).pi.order() == 3);
  const auto t = build(Tetrahedral{1, 0});
  CHECK(t.pi_hat.order() == 48);
  CHECK(t.pi.order() == 24);
  const auto i = build(Icosahedral{1});
  CHECK(i.pi_hat.order() == 240);
  CHECK(i.pi.order() == 120);
}

TEST_CASE("tetrahedral m=1 k=0 projects onto the binary tetrahedral group") {
  const auto t = build(Tetrahedral{1, 0});
  std::vector<groups::UnitQuaternion> lefts;
  for (const auto& x : t.pi_hat.elements())
    if (std::find(lefts.begin(), lefts.end(), x.left) == lefts.end()) lefts.push_back(x.left);
  CHECK(lefts.size() == 24);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(build(Cyclic{4, 1}), SpecViolation);
  CHECK_THROWS_AS(build(Cyclic{9, 3}), SpecViolation);
  CHECK_THROWS_AS(build(Tetrahedral{1, 1}), SpecViolation);
  CHECK_THROWS_AS(build(Tetrahedral{3, 0}), SpecViolation);
  CHECK_THROWS_AS(build(Tetrahedral{1, -1}), SpecViolation);
  CHECK_THROWS_AS(build(Icosahedral{3}), SpecViolation);
  CHECK_THROWS_AS(build(Icosahedral{0}), SpecViolation);
  CHECK(describe(Tetrahedral{5, 0}) == "tetrahedral m=5 k=0");
}

TEST_CASE("icosahedral m=1 passes every check") {
  const auto cert = build(Icosahedral{1});
  const auto report = verify(cert);
  REQUIRE(report.checks.size() == 7);
  for (const auto& c : report.checks) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.passed);
    CHECK(c.witness.empty());
  }
  CHECK(cert.abelianization.is_trivial());
}

TEST_CASE("cyclic m=5 p=2 passes every check") {
  const auto cert = build(Cyclic{5, 2});
  CHECK(verify(cert).all_passed());
  CHECK(cert.abelianization == exact::AbelianGroup::cyclic(5));
}

TEST_CASE("even cyclic order fails the two-torsion check with a witness") {
  const auto cert = build_unchecked(Cyclic{4, 1});
  const auto report = verify(cert);
  CHECK_FALSE(report.all_passed());
  CHECK_FALSE(report.check(2).passed);
  CHECK_FALSE(report.check(2).witness.empty());
  CHECK(cert.abelianization.has_two_torsion());
}

TEST_CASE("default sweep passes") {
  const auto sweep = default_sweep();
  CHECK(sweep.size() >= 12);
  for (const auto& spec : sweep) {
    const auto cert = build(spec);
    INFO(describe(spec));
    CHECK(cert.pi_hat.order() <= 3000);
    CHECK(verify(cert).all_passed());
    CHECK(build(spec).pi_hat.order() == cert.pi_hat.order());
    const groups::Spin4Element minus{-groups::UnitQuaternion(), -groups::UnitQuaternion()};
    const auto lifted = minus.lifted_to(cert.pi_hat.left_conductor(), cert.pi_hat.right_conductor());
    if (cert.pi_hat.find(lifted)) CHECK(cert.pi.order() * 2 == cert.pi_hat.order());
  }
}

TEST_CASE("observed family orders") {
  CHECK(build(Tetrahedral{1, 2}).pi_hat.order() == 144);
  CHECK(build(Tetrahedral{5, 0}).pi_hat.order() == 240);
  CHECK(build(Tetrahedral{7, 2}).pi_hat.order() == 1008);
  for (std::int64_t m : {1, 7, 11}) CHECK(build(Icosahedral{m}).pi_hat.order() == static_cast<std::size_t>(240 * m));
  for (std::int64_t m : {1, 3, 5, 7, 9, 15}) CHECK(build(Cyclic{m, 2}).pi.order() == static_cast<std::size_t>(m));
}

TEST_CASE("fixed-point elements agree between the two criteria") {
  for (const SpaceFormSpec& spec : {SpaceFormSpec{Cyclic{3, 1}}, SpaceFormSpec{Tetrahedral{1, 0}}, SpaceFormSpec{Icosahedral{1}}}) {
    const auto cert = build(spec);
    for (const auto& g : cert.gamma.elements()) {
      if (groups::RotationClass(g).is_identity()) continue;
      CHECK(groups::has_fixed_point(g) == (groups::fixed_space_dimension(g) > 0));
    }
  }
}

TEST_CASE("involution uniqueness scans") {
  for (const SpaceFormSpec& spec : {SpaceFormSpec{Cyclic{3, 1}}, SpaceFormSpec{Icosahedral{1}}, SpaceFormSpec{Tetrahedral{1, 0}}}) {
    const auto cert = build(spec);
    const auto candidates = circle_involutions_outside_pi(cert);
    INFO(describe(spec));
    CHECK_FALSE(candidates.empty());
    CHECK(involution_uniqueness_scan(cert, candidates).size() == 1);
  }
  const auto cert = build(Cyclic{3, 1});
  const groups::Spin4Element id[] = {groups::Spin4Element::identity().lifted_to(cert.gamma.left_conductor(),
                                                                                cert.gamma.right_conductor())};
  CHECK_THROWS_AS(involution_uniqueness_scan(cert, id), ValidationError);
}

TEST_CASE("serialisation is stable") {
  const auto cert = build(Cyclic{5, 2});
  const auto text = serialize(cert, verify(cert));
  CHECK(text == serialize(build(Cyclic{5, 2}), verify(build(Cyclic{5, 2}))));
  CHECK(text.rfind("schema: branchcover.spaceform/1\ncase: cyclic\nm: 5\np: 2\npi_hat_order: 10\npi_order: 5\n", 0) == 0);
  CHECK(text.find("verdict: pass") != std::string::npos);
}

}
