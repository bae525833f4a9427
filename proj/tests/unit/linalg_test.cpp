#include <random>

#include "branchcover/linalg.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace branchcover::exact;

namespace {

IntegerMatrix integer_matrix(const std::vector<std::vector<int>>& rows) {
  std::vector<std::vector<BigInt>> big;
  for (const auto& r : rows) big.emplace_back(r.begin(), r.end());
  return IntegerMatrix::from_rows(big);
}

RationalMatrix rational_matrix(const std::vector<std::vector<int>>& rows) {
  std::vector<std::vector<BigRational>> q;
  for (const auto& r : rows) q.emplace_back(r.begin(), r.end());
  return RationalMatrix::from_rows(q);
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("kernel of small matrices") {
  CHECK(kernel(rational_matrix({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})).empty());
  CHECK(kernel(RationalMatrix(4, 4)).size() == 4);
  const auto k = kernel(rational_matrix({{1, 1}, {2, 2}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == -k[0][1]);
  CHECK(k[0][0] != 0);
}

TEST_CASE("kernel vectors substitute to exact zero") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 1 + trial % 4, cols = 2 + trial % 5;
    RationalMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = entry(rng);
    const auto basis = kernel(m);
    CHECK(basis.size() == cols - rank(m));
    for (const auto& v : basis)
      for (std::size_t r = 0; r < rows; ++r) {
        BigRational s = 0;
        for (std::size_t c = 0; c < cols; ++c) s += m(r, c) * v[c];
        CHECK(s == 0);
      }
  }
}

TEST_CASE("Smith normal form examples") {
  CHECK(smith_normal_form(integer_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).cokernel.is_trivial());
  const auto s = smith_normal_form(integer_matrix({{2, 4}, {6, 8}}));
  CHECK(s.diagonal == std::vector<BigInt>{2, 4});
  CHECK(s.cokernel.to_string() == "Z/2 x Z/4");
  CHECK(smith_normal_form(IntegerMatrix()).cokernel.is_trivial());
  const auto z = smith_normal_form(integer_matrix({{0, 0, 3}}));
  CHECK(z.cokernel.free_rank() == 2);
  CHECK(z.cokernel.to_string() == "Z x Z x Z/3");
}

TEST_CASE("Smith normal form matches determinantal divisors on 100 random 4x4 matrices") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    IntegerMatrix m(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) m(r, c) = entry(rng);
    CHECK(smith_normal_form(m).diagonal == branchcover::oracle::invariant_factors_by_minors(m));
  }
}

TEST_CASE("AbelianGroup normalisation") {
  const auto g = AbelianGroup::from_diagonal({6, 4, 1, 0});
  CHECK(g.invariant_factors() == std::vector<std::int64_t>{2, 12});
  CHECK(g.free_rank() == 1);
  CHECK_FALSE(g.is_finite());
  CHECK(g.to_string() == "Z x Z/2 x Z/12");
  CHECK(AbelianGroup::cyclic(15) == AbelianGroup::from_diagonal({3, 5}));
  CHECK(AbelianGroup::cyclic(15).is_cyclic());
  CHECK(AbelianGroup::cyclic(1).is_trivial());
  CHECK(AbelianGroup::from_diagonal({3, 9}).torsion_order() == 27);
  CHECK_FALSE(AbelianGroup::from_diagonal({3, 9}).is_cyclic());
  CHECK(AbelianGroup::cyclic(4).has_two_torsion());
  CHECK_FALSE(AbelianGroup::cyclic(9).has_two_torsion());
}

}
