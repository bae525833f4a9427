#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "branchcover/exact_scalar.hpp"

namespace branchcover::exact {

/// Dense row-major matrix over an exact ring.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<BigRational>;
using IntegerMatrix = Matrix<BigInt>;

/// Finitely generated abelian group Z^free_rank + Z/d1 + ... + Z/dr with d1 | d2 | ... and every di >= 2.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  /// Accepts any list of nonnegative diagonal entries; zeros count towards the free rank and
  /// units are dropped. The entries are re-normalised into invariant-factor form.
  static AbelianGroup from_diagonal(const std::vector<BigInt>& diagonal, std::size_t extra_free_rank = 0);
  static AbelianGroup cyclic(std::int64_t n);

  const std::vector<std::int64_t>& invariant_factors() const noexcept { return factors_; }
  std::size_t free_rank() const noexcept { return free_rank_; }
  bool is_trivial() const noexcept { return factors_.empty() && free_rank_ == 0; }
  bool is_finite() const noexcept { return free_rank_ == 0; }
  /// Order of the torsion part; the whole order when finite.
  std::int64_t torsion_order() const;
  bool has_two_torsion() const;
  bool is_cyclic() const noexcept { return free_rank_ + factors_.size() <= 1; }

  /// "trivial", "Z", "Z/3", "Z/2 x Z/4", "Z x Z/3".
  std::string to_string() const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  std::vector<std::int64_t> factors_;
  std::size_t free_rank_ = 0;
};

/// Exact basis of {v : M v = 0}. Vectors are scaled to primitive integer form.
std::vector<std::vector<BigRational>> kernel(const RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);

struct SmithForm {
  /// Nonzero diagonal entries after reduction (units included), nondecreasing, each dividing the next.
  std::vector<BigInt> diagonal;
  /// The cokernel Z^cols / rowspace(M).
  AbelianGroup cokernel;
};

/// Smith normal form by gcd pivoting with unimodular row and column operations.
/// Rows of `m` are relations among the generators indexed by columns.
SmithForm smith_normal_form(const IntegerMatrix& m);

}  // namespace branchcover::exact
