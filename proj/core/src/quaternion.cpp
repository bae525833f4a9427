#include "branchcover/quaternion.hpp"

#include <numeric>
#include <sstream>

#include "branchcover/errors.hpp"

namespace branchcover::groups {

namespace {

int common_conductor(const std::array<ExactScalar, 4>& c) {
  int n = 1;
  for (const auto& x : c) n = std::lcm(n, x.conductor());
  return n;
}

std::size_t mix(std::size_t h, std::size_t v) { return (h ^ v) * 0x100000001b3ULL + (h << 6) + (h >> 2); }

}  // namespace

Quaternion::Quaternion() : c_{ExactScalar(1), ExactScalar(0), ExactScalar(0), ExactScalar(0)} {}

Quaternion::Quaternion(ExactScalar a, ExactScalar b, ExactScalar c, ExactScalar d)
    : c_{std::move(a), std::move(b), std::move(c), std::move(d)} {
  const int n = common_conductor(c_);
  for (auto& x : c_) x = x.lifted_to(n);
}

Quaternion Quaternion::i() { return {ExactScalar(0), ExactScalar(1), ExactScalar(0), ExactScalar(0)}; }
Quaternion Quaternion::j() { return {ExactScalar(0), ExactScalar(0), ExactScalar(1), ExactScalar(0)}; }
Quaternion Quaternion::k() { return {ExactScalar(0), ExactScalar(0), ExactScalar(0), ExactScalar(1)}; }

Quaternion Quaternion::exp_i(std::int64_t a, std::int64_t n) {
  return {ExactScalar::cos_2pi(a, n), ExactScalar::sin_2pi(a, n), ExactScalar(0), ExactScalar(0)};
}

Quaternion Quaternion::lifted_to(int conductor) const {
  Quaternion out = *this;
  for (auto& x : out.c_) x = x.lifted_to(conductor);
  return out;
}

ExactScalar Quaternion::norm_squared() const {
  return c_[0] * c_[0] + c_[1] * c_[1] + c_[2] * c_[2] + c_[3] * c_[3];
}

Quaternion Quaternion::conjugate() const { return {c_[0], -c_[1], -c_[2], -c_[3]}; }

bool Quaternion::is_real() const { return c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }

bool Quaternion::is_complex() const { return c_[2].is_zero() && c_[3].is_zero(); }

Quaternion Quaternion::operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }

Quaternion operator*(const Quaternion& x, const Quaternion& y) {
  const auto& [a1, b1, c1, d1] = x.c_;
  const auto& [a2, b2, c2, d2] = y.c_;
  return {a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2, a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
          a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2, a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2};
}

Quaternion operator+(const Quaternion& x, const Quaternion& y) {
  return {x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2], x.c_[3] + y.c_[3]};
}

Quaternion operator-(const Quaternion& x, const Quaternion& y) { return x + (-y); }

Quaternion operator*(const ExactScalar& s, const Quaternion& x) {
  return {s * x.c_[0], s * x.c_[1], s * x.c_[2], s * x.c_[3]};
}

bool operator==(const Quaternion& x, const Quaternion& y) { return x.c_ == y.c_; }

int Quaternion::leading_sign() const {
  for (const auto& x : c_)
    if (int s = x.sign(); s != 0) return s;
  return 0;
}

std::size_t Quaternion::hash() const noexcept {
  std::size_t h = 0;
  for (const auto& x : c_) h = mix(h, x.hash());
  return h;
}

std::string Quaternion::to_string() const {
  static constexpr const char* units[] = {"", "i", "j", "k"};
  std::ostringstream out;
  bool first = true;
  for (std::size_t n = 0; n < 4; ++n) {
    if (c_[n].is_zero()) continue;
    if (!first) out << " + ";
    const std::string coeff = c_[n].to_string();
    if (n == 0) out << coeff;
    else if (coeff == "1") out << units[n];
    else if (coeff == "-1") out << "-" << units[n];
    else out << coeff << "*" << units[n];
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

std::array<double, 4> Quaternion::to_doubles() const {
  return {c_[0].to_double(), c_[1].to_double(), c_[2].to_double(), c_[3].to_double()};
}

UnitQuaternion::UnitQuaternion(Quaternion q) : q_(std::move(q)) {
  if (!q_.norm_squared().is_one()) throw ValidationError("quaternion " + q_.to_string() + " is not a unit");
}

Quaternion Spin4Element::apply(const Quaternion& x) const {
  return left.value() * x * right.inverse().value();
}

std::size_t Spin4Element::hash() const noexcept { return mix(left.value().hash(), right.value().hash()); }

std::string Spin4Element::to_string() const {
  return "(" + left.value().to_string() + ", " + right.value().to_string() + ")";
}

RotationClass::RotationClass(const Spin4Element& rep) : rep_(rep) {
  if (rep_.left.value().leading_sign() < 0) rep_ = -rep_;
}

bool RotationClass::is_identity() const { return rep_.left.value().is_real() && rep_.right.value().is_real() &&
                                                 rep_.left.re() == rep_.right.re(); }

std::string FixedSet::kind_name() const {
  switch (kind) {
    case Kind::Empty: return "Empty";
    case Kind::Circle: return "Circle";
    case Kind::All: return "All";
  }
  return "?";
}

namespace {

using Row = std::array<ExactScalar, 4>;

// Scales a row by a positive rational so its coefficients are coprime integers.
void normalise_content(Row& row) {
  int n = 1;
  for (const auto& x : row) n = std::lcm(n, x.conductor());
  std::int64_t den = 1, g = 0;
  for (auto& x : row) {
    x = x.lifted_to(n);
    den = std::lcm(den, x.denominator());
  }
  for (const auto& x : row)
    for (std::int64_t c : x.numerators()) g = std::gcd(g, c * (den / x.denominator()));
  if (g == 0) return;
  const ExactScalar scale = ExactScalar::from_rational(den, g);
  for (auto& x : row) x = x * scale;
}

}  // namespace

std::size_t fixed_space_dimension(const Spin4Element& g) {
  const Quaternion& l = g.left.value();
  const Quaternion& r = g.right.value();
  const std::array<Quaternion, 4> basis{Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()};
  // rows[i][m] = coordinate i of l e_m - e_m r
  std::array<Row, 4> rows;
  for (std::size_t m = 0; m < 4; ++m) {
    Quaternion col = l * basis[m] - basis[m] * r;
    for (std::size_t i = 0; i < 4; ++i) rows[i][m] = col[i];
  }
  for (auto& row : rows) normalise_content(row);

  std::size_t rank = 0;
  for (std::size_t c = 0; c < 4 && rank < 4; ++c) {
    std::size_t pivot = rank;
    while (pivot < 4 && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == 4) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t i = rank + 1; i < 4; ++i) {
      if (rows[i][c].is_zero()) continue;
      const ExactScalar a = rows[rank][c], b = rows[i][c];
      for (std::size_t k = c; k < 4; ++k) rows[i][k] = a * rows[i][k] - b * rows[rank][k];
      normalise_content(rows[i]);
    }
    ++rank;
  }
  return 4 - rank;
}

bool has_fixed_point(const Spin4Element& g) { return g.left.re() == g.right.re(); }

FixedSet fixed_set(const Spin4Element& g) {
  const std::size_t dim = fixed_space_dimension(g);
  FixedSet out;
  if (dim == 0) return out;
  if (dim == 4) {
    out.kind = FixedSet::Kind::All;
    out.basis = {Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()};
    return out;
  }
  if (dim != 2) throw InternalInconsistency("fixed space of dimension " + std::to_string(dim));

  // With v1 = Im l, v2 = Im r and |v1| = |v2|, the vector |v1|^2 - v1 v2 solves v1 x = x v2,
  // and left multiplication by v1 preserves the solution space.
  const Quaternion& l = g.left.value();
  const Quaternion& r = g.right.value();
  const Quaternion v1{ExactScalar(0), l[1], l[2], l[3]};
  const Quaternion v2{ExactScalar(0), r[1], r[2], r[3]};
  const ExactScalar n = ExactScalar(1) - l.re() * l.re();
  Quaternion x1 = Quaternion(n, ExactScalar(0), ExactScalar(0), ExactScalar(0)) - v1 * v2;
  if (x1 == Quaternion(ExactScalar(0), ExactScalar(0), ExactScalar(0), ExactScalar(0))) {
    // v2 = -v1: the solutions are the pure quaternions orthogonal to v1.
    for (const Quaternion& e : {Quaternion::i(), Quaternion::j(), Quaternion::k()}) {
      Quaternion p = v1 * e;
      Quaternion cross{ExactScalar(0), p[1], p[2], p[3]};
      if (!cross.norm_squared().is_zero()) {
        x1 = cross;
        break;
      }
    }
  }
  Quaternion x2 = v1 * x1;
  for (const Quaternion& x : {x1, x2})
    if (!(l * x == x * r) || x.norm_squared().is_zero())
      throw InternalInconsistency("constructed fixed vector is not fixed");
  out.kind = FixedSet::Kind::Circle;
  out.basis = {x1, x2};
  return out;
}

}  // namespace branchcover::groups
