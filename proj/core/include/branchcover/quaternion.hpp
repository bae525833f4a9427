#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "branchcover/exact_scalar.hpp"

namespace branchcover::groups {

using exact::ExactScalar;

/// Quaternion a + b i + c j + d k with exact real cyclotomic coordinates.
///
/// The four coordinates always share one conductor, so the coordinate
/// vectors are canonical and hashing is consistent with equality for
/// quaternions built in the same field.
class Quaternion {
 public:
  Quaternion();
  Quaternion(ExactScalar a, ExactScalar b, ExactScalar c, ExactScalar d);

  static Quaternion one() { return Quaternion(); }
  static Quaternion i();
  static Quaternion j();
  static Quaternion k();
  /// cos(2 pi a / n) + i sin(2 pi a / n)
  static Quaternion exp_i(std::int64_t a, std::int64_t n);

  const ExactScalar& re() const noexcept { return c_[0]; }
  const ExactScalar& operator[](std::size_t i) const { return c_[i]; }
  int conductor() const noexcept { return c_[0].conductor(); }
  Quaternion lifted_to(int conductor) const;

  ExactScalar norm_squared() const;
  Quaternion conjugate() const;
  bool is_real() const;
  /// True when the j and k coordinates vanish.
  bool is_complex() const;

  Quaternion operator-() const;
  friend Quaternion operator*(const Quaternion& x, const Quaternion& y);
  friend Quaternion operator+(const Quaternion& x, const Quaternion& y);
  friend Quaternion operator-(const Quaternion& x, const Quaternion& y);
  friend Quaternion operator*(const ExactScalar& s, const Quaternion& x);
  friend bool operator==(const Quaternion& x, const Quaternion& y);

  /// Sign of the first nonzero coordinate.
  int leading_sign() const;
  std::size_t hash() const noexcept;
  std::string to_string() const;
  std::array<double, 4> to_doubles() const;

 private:
  std::array<ExactScalar, 4> c_;
};

/// A quaternion checked to have norm exactly 1.
class UnitQuaternion {
 public:
  UnitQuaternion() = default;
  /// Throws ValidationError when the norm is not exactly 1.
  explicit UnitQuaternion(Quaternion q);

  const Quaternion& value() const noexcept { return q_; }
  const ExactScalar& re() const noexcept { return q_.re(); }
  UnitQuaternion inverse() const { return UnitQuaternion(q_.conjugate(), Trusted{}); }
  UnitQuaternion lifted_to(int conductor) const { return UnitQuaternion(q_.lifted_to(conductor), Trusted{}); }

  UnitQuaternion operator-() const { return UnitQuaternion(-q_, Trusted{}); }
  friend UnitQuaternion operator*(const UnitQuaternion& x, const UnitQuaternion& y) {
    return UnitQuaternion(x.q_ * y.q_, Trusted{});
  }
  friend bool operator==(const UnitQuaternion& x, const UnitQuaternion& y) { return x.q_ == y.q_; }

 private:
  struct Trusted {};
  UnitQuaternion(Quaternion q, Trusted) : q_(std::move(q)) {}
  Quaternion q_;
};

/// (l, r) acting on R^4 = H by x -> l x r^-1.
struct Spin4Element {
  UnitQuaternion left;
  UnitQuaternion right;

  static Spin4Element identity() { return {}; }
  Spin4Element inverse() const { return {left.inverse(), right.inverse()}; }
  Spin4Element operator-() const { return {-left, -right}; }
  Spin4Element lifted_to(int left_conductor, int right_conductor) const {
    return {left.lifted_to(left_conductor), right.lifted_to(right_conductor)};
  }
  /// The image l x r^-1.
  Quaternion apply(const Quaternion& x) const;

  friend Spin4Element operator*(const Spin4Element& a, const Spin4Element& b) {
    return {a.left * b.left, a.right * b.right};
  }
  friend bool operator==(const Spin4Element&, const Spin4Element&) = default;

  std::size_t hash() const noexcept;
  std::string to_string() const;
};

/// An element of SO(4) = Spin(4) / {+-(1,1)}, stored as a sign-normalised representative
/// whose left factor has a positive leading coordinate.
class RotationClass {
 public:
  RotationClass() = default;
  explicit RotationClass(const Spin4Element& rep);

  const Spin4Element& representative() const noexcept { return rep_; }
  bool is_identity() const;
  RotationClass inverse() const { return RotationClass(rep_.inverse()); }

  friend RotationClass operator*(const RotationClass& a, const RotationClass& b) {
    return RotationClass(a.rep_ * b.rep_);
  }
  friend bool operator==(const RotationClass&, const RotationClass&) = default;

 private:
  Spin4Element rep_;
};

struct FixedSet {
  enum class Kind { Empty, Circle, All };
  Kind kind = Kind::Empty;
  /// For a Circle: two exact, mutually orthogonal, nonzero vectors spanning the fixed plane.
  /// They are not normalised, because unit length would leave the coefficient field.
  std::vector<Quaternion> basis;

  std::string kind_name() const;
};

/// Dimension of {x : q1 x = x q2}, by exact elimination on the 4x4 matrix of x -> q1 x - x q2.
std::size_t fixed_space_dimension(const Spin4Element& g);

/// Fixed set of the rotation on the unit sphere. Dimensions 1 and 3 raise InternalInconsistency.
FixedSet fixed_set(const Spin4Element& g);
inline FixedSet fixed_set(const RotationClass& r) { return fixed_set(r.representative()); }

/// Real-part criterion: a non-identity rotation has a fixed point on S^3 iff Re q1 = Re q2.
bool has_fixed_point(const Spin4Element& g);

}  // namespace branchcover::groups

template <>
struct std::hash<branchcover::groups::Spin4Element> {
  std::size_t operator()(const branchcover::groups::Spin4Element& x) const noexcept { return x.hash(); }
};
