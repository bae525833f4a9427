#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace branchcover::exact {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
/// The returned reference stays valid for the lifetime of the program.
const std::vector<std::int64_t>& cyclotomic_polynomial(int n);

/// Euler's totient.
int totient(int n);

/// A real number in the cyclotomic field Q(zeta_N).
///
/// Stored as an integer coefficient vector over the power basis
/// 1, zeta, ..., zeta^(phi(N)-1) (reduced modulo the N-th cyclotomic
/// polynomial) with one positive common denominator. The representation is
/// canonical for a fixed conductor: gcd(numerators, denominator) = 1 and the
/// vector always has exactly phi(N) entries. Scalars of different conductor
/// are lifted to the lcm before any binary operation, so `==` is exact across
/// conductors. `hash()` is only consistent with `==` among scalars of equal
/// conductor; callers that hash lift to a common conductor first.
class ExactScalar {
 public:
  ExactScalar();
  explicit ExactScalar(std::int64_t value);

  static ExactScalar from_rational(std::int64_t num, std::int64_t den);
  static ExactScalar from_rational(const BigRational& value);

  /// Builds sum c_e zeta_N^e. Exponents are taken modulo N.
  /// Throws NotReal when the reduced value is not fixed by zeta -> zeta^-1.
  static ExactScalar make(int conductor, const std::map<int, BigRational>& coeffs);

  /// cos(2 pi a / n) and sin(2 pi a / n) in the smallest convenient conductor.
  static ExactScalar cos_2pi(std::int64_t a, std::int64_t n);
  static ExactScalar sin_2pi(std::int64_t a, std::int64_t n);

  static ExactScalar sqrt2();
  static ExactScalar sqrt3();
  static ExactScalar sqrt5();
  /// (1 + sqrt 5) / 2
  static ExactScalar golden_ratio();

  int conductor() const noexcept { return conductor_; }
  std::span<const std::int64_t> numerators() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }

  /// Same value, expressed over Q(zeta_target). `target` must be a multiple of the conductor.
  ExactScalar lifted_to(int target) const;

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  /// Exact sign of the real value under zeta_N -> exp(2 pi i / N).
  int sign() const;
  double to_double() const;
  /// Set when the value is rational.
  std::optional<BigRational> rational_value() const;

  ExactScalar inverse() const;

  ExactScalar operator-() const;
  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b);
  ExactScalar& operator+=(const ExactScalar& other) { return *this = *this + other; }
  ExactScalar& operator-=(const ExactScalar& other) { return *this = *this - other; }
  ExactScalar& operator*=(const ExactScalar& other) { return *this = *this * other; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b);

  std::size_t hash() const noexcept;
  std::string to_string() const;

 private:
  __extension__ using Wide = __int128;

  ExactScalar(int conductor, std::vector<std::int64_t> num, std::int64_t den);

  // Builds a canonical scalar from wide coefficients that are already reduced.
  static ExactScalar normalized(int conductor, std::vector<Wide> num, Wide den);

  int conductor_ = 1;
  std::vector<std::int64_t> num_;
  std::int64_t den_ = 1;
};

/// Convenience wrappers used by tests and the CLI, named after the operations they perform.
inline bool is_zero(const ExactScalar& x) { return x.is_zero(); }
inline int compare_to_zero(const ExactScalar& x) { return x.sign(); }
inline double to_float(const ExactScalar& x) { return x.to_double(); }

}  // namespace branchcover::exact

template <>
struct std::hash<branchcover::exact::ExactScalar> {
  std::size_t operator()(const branchcover::exact::ExactScalar& x) const noexcept { return x.hash(); }
};
