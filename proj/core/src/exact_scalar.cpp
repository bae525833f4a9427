#include "branchcover/exact_scalar.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "branchcover/errors.hpp"

namespace branchcover::exact {

namespace {

__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;

constexpr int kMaxConductor = 1 << 16;

u128 abs128(i128 x) { return x < 0 ? static_cast<u128>(-x) : static_cast<u128>(x); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

[[noreturn]] void overflow() { throw ArithmeticOverflow("exact scalar coefficient overflow"); }

i128 mul_checked(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) overflow();
  return r;
}

i128 add_checked(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) overflow();
  return r;
}

std::int64_t narrow(i128 x) {
  if (x > INT64_MAX || x < INT64_MIN) overflow();
  return static_cast<std::int64_t>(x);
}

int lcm_conductor(int a, int b) {
  long long l = std::lcm(static_cast<long long>(a), static_cast<long long>(b));
  if (l > kMaxConductor) throw ArithmeticOverflow("conductor " + std::to_string(l) + " too large");
  return static_cast<int>(l);
}

std::vector<std::int64_t> compute_cyclotomic(int n) {
  // x^n - 1 divided by every Phi_d, d | n, d < n.
  std::vector<i128> poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto& divisor = cyclotomic_polynomial(d);
    const std::size_t dd = divisor.size() - 1;
    const std::size_t deg = poly.size() - 1;
    std::vector<i128> quotient(deg - dd + 1, 0);
    for (std::size_t k = deg + 1; k-- > dd;) {
      i128 c = poly[k];
      if (c == 0) continue;
      quotient[k - dd] = c;
      for (std::size_t j = 0; j <= dd; ++j) poly[k - dd + j] -= c * divisor[j];
    }
    poly.assign(quotient.begin(), quotient.end());
  }
  std::vector<std::int64_t> out(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) out[i] = narrow(poly[i]);
  return out;
}

// Reduces `poly` in place modulo the monic polynomial `phi` of degree `deg`
// and truncates it to `deg` coefficients.
void reduce_wide(std::vector<i128>& poly, const std::vector<std::int64_t>& phi) {
  const std::size_t deg = phi.size() - 1;
  for (std::size_t k = poly.size(); k-- > deg;) {
    i128 c = poly[k];
    if (c == 0) continue;
    for (std::size_t j = 0; j < deg; ++j) {
      if (phi[j] != 0) poly[k - deg + j] = add_checked(poly[k - deg + j], -mul_checked(c, phi[j]));
    }
    poly[k] = 0;
  }
  poly.resize(deg, 0);
}

void reduce_big(std::vector<BigRational>& poly, const std::vector<std::int64_t>& phi) {
  const std::size_t deg = phi.size() - 1;
  for (std::size_t k = poly.size(); k-- > deg;) {
    BigRational c = poly[k];
    if (c == 0) continue;
    for (std::size_t j = 0; j < deg; ++j) {
      if (phi[j] != 0) poly[k - deg + j] -= c * phi[j];
    }
    poly[k] = 0;
  }
  poly.resize(deg, BigRational(0));
}

std::int64_t positive_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(int n) {
  if (n < 1 || n > kMaxConductor) throw std::invalid_argument("cyclotomic index out of range");
  static std::mutex mutex;
  static std::unordered_map<int, std::unique_ptr<const std::vector<std::int64_t>>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
  }
  // Computed outside the lock: the recursion re-enters for divisors.
  std::vector<std::int64_t> poly = n == 1 ? std::vector<std::int64_t>{-1, 1} : compute_cyclotomic(n);
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.try_emplace(n, std::make_unique<const std::vector<std::int64_t>>(std::move(poly)));
  return *it->second;
}

int totient(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

ExactScalar::ExactScalar() : conductor_(1), num_{0}, den_(1) {}

ExactScalar::ExactScalar(std::int64_t value) : conductor_(1), num_{value}, den_(1) {}

ExactScalar::ExactScalar(int conductor, std::vector<std::int64_t> num, std::int64_t den)
    : conductor_(conductor), num_(std::move(num)), den_(den) {}

ExactScalar ExactScalar::normalized(int conductor, std::vector<i128> num, i128 den) {
  if (den == 0) throw DivisionByZero("zero denominator");
  if (den < 0) {
    den = -den;
    for (auto& c : num) c = -c;
  }
  u128 g = abs128(den);
  for (i128 c : num) {
    if (g == 1) break;
    if (c != 0) g = gcd128(g, abs128(c));
  }
  bool all_zero = std::all_of(num.begin(), num.end(), [](i128 c) { return c == 0; });
  if (all_zero) {
    den = 1;
  } else if (g > 1) {
    for (auto& c : num) c /= static_cast<i128>(g);
    den /= static_cast<i128>(g);
  }
  std::vector<std::int64_t> out(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) out[i] = narrow(num[i]);
  return ExactScalar(conductor, std::move(out), narrow(den));
}

ExactScalar ExactScalar::from_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  return normalized(1, {static_cast<i128>(num)}, static_cast<i128>(den));
}

ExactScalar ExactScalar::from_rational(const BigRational& value) {
  BigInt n = boost::multiprecision::numerator(value);
  BigInt d = boost::multiprecision::denominator(value);
  if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) overflow();
  return from_rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

ExactScalar ExactScalar::make(int conductor, const std::map<int, BigRational>& coeffs) {
  if (conductor < 1) throw std::invalid_argument("conductor must be positive");
  const auto& phi = cyclotomic_polynomial(conductor);
  std::vector<BigRational> poly(static_cast<std::size_t>(conductor), BigRational(0));
  for (const auto& [e, c] : coeffs) poly[static_cast<std::size_t>(positive_mod(e, conductor))] += c;
  std::vector<BigRational> conj(poly.size(), BigRational(0));
  for (std::size_t e = 0; e < poly.size(); ++e)
    conj[static_cast<std::size_t>(positive_mod(-static_cast<std::int64_t>(e), conductor))] = poly[e];
  reduce_big(poly, phi);
  reduce_big(conj, phi);
  if (poly != conj) throw NotReal("value is not fixed by complex conjugation");

  BigInt den = 1;
  for (const auto& c : poly) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(c));
  std::vector<i128> num(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    BigInt v = boost::multiprecision::numerator(poly[i]) * (den / boost::multiprecision::denominator(poly[i]));
    if (v > INT64_MAX || v < INT64_MIN) overflow();
    num[i] = static_cast<std::int64_t>(v);
  }
  if (den > INT64_MAX) overflow();
  return normalized(conductor, std::move(num), static_cast<std::int64_t>(den));
}

ExactScalar ExactScalar::cos_2pi(std::int64_t a, std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("cos_2pi needs n > 0");
  a = positive_mod(a, n);
  std::int64_t g = std::gcd(a, n);
  if (a == 0) return ExactScalar(1);
  std::int64_t num = a / g, conductor = n / g;
  if (conductor > kMaxConductor) overflow();
  int c = static_cast<int>(conductor);
  std::map<int, BigRational> coeffs;
  coeffs[static_cast<int>(num)] += BigRational(1, 2);
  coeffs[static_cast<int>(c - num)] += BigRational(1, 2);
  return make(c, coeffs);
}

ExactScalar ExactScalar::sin_2pi(std::int64_t a, std::int64_t n) {
  // sin(2 pi a/n) = cos(2 pi (4a - n) / 4n)
  if (n <= 0) throw std::invalid_argument("sin_2pi needs n > 0");
  return cos_2pi(4 * a - n, 4 * n);
}

ExactScalar ExactScalar::sqrt2() { return make(8, {{1, BigRational(1)}, {7, BigRational(1)}}); }

ExactScalar ExactScalar::sqrt3() { return make(12, {{1, BigRational(1)}, {11, BigRational(1)}}); }

ExactScalar ExactScalar::sqrt5() {
  return make(5, {{0, BigRational(1)}, {1, BigRational(2)}, {4, BigRational(2)}});
}

ExactScalar ExactScalar::golden_ratio() {
  return (ExactScalar(1) + sqrt5()) * from_rational(1, 2);
}

ExactScalar ExactScalar::lifted_to(int target) const {
  if (target == conductor_) return *this;
  if (target % conductor_ != 0) throw std::invalid_argument("lift target must be a multiple of the conductor");
  const int step = target / conductor_;
  std::vector<i128> poly(static_cast<std::size_t>(target), 0);
  for (std::size_t e = 0; e < num_.size(); ++e) poly[e * static_cast<std::size_t>(step)] = num_[e];
  reduce_wide(poly, cyclotomic_polynomial(target));
  return normalized(target, std::move(poly), den_);
}

bool ExactScalar::is_zero() const noexcept {
  return std::all_of(num_.begin(), num_.end(), [](std::int64_t c) { return c == 0; });
}

bool ExactScalar::is_one() const noexcept {
  if (den_ != 1 || num_.empty() || num_[0] != 1) return false;
  return std::all_of(num_.begin() + 1, num_.end(), [](std::int64_t c) { return c == 0; });
}

double ExactScalar::to_double() const {
  long double sum = 0;
  const long double two_pi = 2 * 3.141592653589793238462643383279502884L;
  for (std::size_t e = 0; e < num_.size(); ++e) {
    if (num_[e] == 0) continue;
    sum += static_cast<long double>(num_[e]) * std::cos(two_pi * static_cast<long double>(e) / conductor_);
  }
  return static_cast<double>(sum / static_cast<long double>(den_));
}

int ExactScalar::sign() const {
  if (is_zero()) return 0;
  // Fast path: long double evaluation with a generous rounding bound.
  long double sum = 0, magnitude = 0;
  const long double two_pi = 2 * 3.141592653589793238462643383279502884L;
  for (std::size_t e = 0; e < num_.size(); ++e) {
    if (num_[e] == 0) continue;
    long double c = static_cast<long double>(num_[e]);
    sum += c * std::cos(two_pi * static_cast<long double>(e) / conductor_);
    magnitude += std::fabs(c);
  }
  if (std::fabs(sum) > magnitude * 1e-15L) return sum > 0 ? 1 : -1;

  // Interval refinement: increasing precision until the value clears its error bound.
  using boost::multiprecision::cpp_bin_float_100;
  using Wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<600>>;
  auto refine = [&](auto zero, const char* rel_bound) -> int {
    using F = decltype(zero);
    F total = 0, mag = 0;
    F tau = boost::math::constants::two_pi<F>();
    for (std::size_t e = 0; e < num_.size(); ++e) {
      if (num_[e] == 0) continue;
      F c = F(num_[e]);
      total += c * cos(tau * F(static_cast<long long>(e)) / F(conductor_));
      mag += abs(c);
    }
    if (abs(total) > mag * F(rel_bound)) return total > 0 ? 1 : -1;
    return 0;
  };
  if (int s = refine(cpp_bin_float_100(0), "1e-90"); s != 0) return s;
  if (int s = refine(Wide(0), "1e-580"); s != 0) return s;
  throw InternalInconsistency("sign of nonzero cyclotomic scalar unresolved at 600 digits");
}

std::optional<BigRational> ExactScalar::rational_value() const {
  for (std::size_t e = 1; e < num_.size(); ++e)
    if (num_[e] != 0) return std::nullopt;
  return BigRational(num_[0], den_);
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (conductor_ == 1) return from_rational(den_, num_[0]);
  // Solve (x * y) = 1 for y over Q: column j of the matrix is x * zeta^j.
  const auto& phi = cyclotomic_polynomial(conductor_);
  const std::size_t deg = num_.size();
  std::vector<std::vector<BigRational>> m(deg, std::vector<BigRational>(deg + 1, BigRational(0)));
  std::vector<BigRational> col(num_.begin(), num_.end());
  for (std::size_t j = 0; j < deg; ++j) {
    for (std::size_t i = 0; i < deg; ++i) m[i][j] = col[i];
    // col <- col * zeta, reduced
    col.insert(col.begin(), BigRational(0));
    reduce_big(col, phi);
  }
  m[0][deg] = BigRational(den_);  // x = num/den, so num * y = den
  for (std::size_t c = 0; c < deg; ++c) {
    std::size_t pivot = c;
    while (pivot < deg && m[pivot][c] == 0) ++pivot;
    if (pivot == deg) throw InternalInconsistency("singular multiplication matrix");
    std::swap(m[c], m[pivot]);
    BigRational p = m[c][c];
    for (std::size_t k = c; k <= deg; ++k) m[c][k] /= p;
    for (std::size_t r = 0; r < deg; ++r) {
      if (r == c || m[r][c] == 0) continue;
      BigRational f = m[r][c];
      for (std::size_t k = c; k <= deg; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::map<int, BigRational> coeffs;
  for (std::size_t i = 0; i < deg; ++i)
    if (m[i][deg] != 0) coeffs.emplace(static_cast<int>(i), m[i][deg]);
  return make(conductor_, coeffs);
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar out = *this;
  for (auto& c : out.num_) c = -c;
  return out;
}

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
  if (a.conductor_ != b.conductor_) {
    int l = lcm_conductor(a.conductor_, b.conductor_);
    return a.lifted_to(l) + b.lifted_to(l);
  }
  std::vector<i128> num(a.num_.size());
  if (a.den_ == b.den_) {
    for (std::size_t i = 0; i < num.size(); ++i) num[i] = static_cast<i128>(a.num_[i]) + b.num_[i];
    return ExactScalar::normalized(a.conductor_, std::move(num), a.den_);
  }
  for (std::size_t i = 0; i < num.size(); ++i)
    num[i] = static_cast<i128>(a.num_[i]) * b.den_ + static_cast<i128>(b.num_[i]) * a.den_;
  return ExactScalar::normalized(a.conductor_, std::move(num), static_cast<i128>(a.den_) * b.den_);
}

ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return a + (-b); }

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  if (a.conductor_ != b.conductor_) {
    if (a.conductor_ == 1 || b.conductor_ == 1) {
      // Rational times field element: scale coefficients directly.
      const ExactScalar& r = a.conductor_ == 1 ? a : b;
      const ExactScalar& x = a.conductor_ == 1 ? b : a;
      std::vector<i128> num(x.num_.size());
      for (std::size_t i = 0; i < num.size(); ++i) num[i] = static_cast<i128>(x.num_[i]) * r.num_[0];
      return ExactScalar::normalized(x.conductor_, std::move(num), static_cast<i128>(x.den_) * r.den_);
    }
    int l = lcm_conductor(a.conductor_, b.conductor_);
    return a.lifted_to(l) * b.lifted_to(l);
  }
  const std::size_t deg = a.num_.size();
  if (a.is_zero() || b.is_zero()) return ExactScalar(a.conductor_, std::vector<std::int64_t>(deg, 0), 1);
  std::vector<i128> prod(2 * deg - 1, 0);
  for (std::size_t i = 0; i < deg; ++i) {
    if (a.num_[i] == 0) continue;
    const i128 ai = a.num_[i];
    for (std::size_t j = 0; j < deg; ++j) {
      if (b.num_[j] == 0) continue;
      prod[i + j] = add_checked(prod[i + j], ai * b.num_[j]);
    }
  }
  reduce_wide(prod, cyclotomic_polynomial(a.conductor_));
  return ExactScalar::normalized(a.conductor_, std::move(prod), static_cast<i128>(a.den_) * b.den_);
}

ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) { return a * b.inverse(); }

bool operator==(const ExactScalar& a, const ExactScalar& b) {
  if (a.conductor_ == b.conductor_) return a.den_ == b.den_ && a.num_ == b.num_;
  // A rational equals a field element only if the latter is rational too.
  int l = lcm_conductor(a.conductor_, b.conductor_);
  ExactScalar la = a.lifted_to(l), lb = b.lifted_to(l);
  return la.den_ == lb.den_ && la.num_ == lb.num_;
}

std::size_t ExactScalar::hash() const noexcept {
  std::size_t h = std::hash<int>{}(conductor_) ^ (std::hash<std::int64_t>{}(den_) * 0x9e3779b97f4a7c15ULL);
  for (std::int64_t c : num_) h = (h ^ std::hash<std::int64_t>{}(c)) * 0x100000001b3ULL + 0x9e3779b9U;
  return h;
}

std::string ExactScalar::to_string() const {
  if (auto r = rational_value()) {
    std::ostringstream out;
    out << *r;
    return out.str();
  }
  std::ostringstream out;
  out << "(";
  bool first = true;
  for (std::size_t e = 0; e < num_.size(); ++e) {
    std::int64_t c = num_[e];
    if (c == 0) continue;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    std::int64_t ac = c < 0 ? -c : c;
    if (e == 0) {
      out << ac;
    } else {
      if (ac != 1) out << ac << "*";
      out << "z" << conductor_;
      if (e > 1) out << "^" << e;
    }
    first = false;
  }
  out << ")";
  if (den_ != 1) out << "/" << den_;
  return out.str();
}

}  // namespace branchcover::exact
