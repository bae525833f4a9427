#include "branchcover/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "branchcover/errors.hpp"

namespace branchcover::exact {

namespace bmp = boost::multiprecision;

AbelianGroup AbelianGroup::from_diagonal(const std::vector<BigInt>& diagonal, std::size_t extra_free_rank) {
  AbelianGroup g;
  g.free_rank_ = extra_free_rank;
  // Split into prime powers, then regroup; this tolerates inputs that are not yet a divisibility chain.
  std::vector<std::pair<BigInt, std::vector<BigInt>>> primes;  // prime -> exponent powers
  for (BigInt d : diagonal) {
    if (d < 0) d = -d;
    if (d == 0) {
      ++g.free_rank_;
      continue;
    }
    for (BigInt p = 2; p * p <= d; ++p) {
      if (d % p != 0) continue;
      BigInt power = 1;
      while (d % p == 0) {
        d /= p;
        power *= p;
      }
      auto it = std::find_if(primes.begin(), primes.end(), [&](const auto& e) { return e.first == p; });
      if (it == primes.end()) primes.push_back({p, {power}});
      else it->second.push_back(power);
    }
    if (d > 1) {
      auto it = std::find_if(primes.begin(), primes.end(), [&](const auto& e) { return e.first == d; });
      if (it == primes.end()) primes.push_back({d, {d}});
      else it->second.push_back(d);
    }
  }
  std::size_t count = 0;
  for (auto& [p, powers] : primes) {
    std::sort(powers.begin(), powers.end(), std::greater<>());
    count = std::max(count, powers.size());
  }
  std::vector<BigInt> factors(count, BigInt(1));
  // Largest factor collects the largest prime power of every prime.
  for (const auto& [p, powers] : primes)
    for (std::size_t i = 0; i < powers.size(); ++i) factors[count - 1 - i] *= powers[i];
  for (const auto& f : factors) {
    if (f > INT64_MAX) throw ArithmeticOverflow("invariant factor exceeds 64 bits");
    g.factors_.push_back(static_cast<std::int64_t>(f));
  }
  return g;
}

AbelianGroup AbelianGroup::cyclic(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("cyclic order must be nonnegative");
  return from_diagonal({BigInt(n)});
}

std::int64_t AbelianGroup::torsion_order() const {
  std::int64_t order = 1;
  for (auto f : factors_) {
    if (__builtin_mul_overflow(order, f, &order)) throw ArithmeticOverflow("abelian group order overflow");
  }
  return order;
}

bool AbelianGroup::has_two_torsion() const {
  return std::any_of(factors_.begin(), factors_.end(), [](std::int64_t f) { return f % 2 == 0; });
}

std::string AbelianGroup::to_string() const {
  if (is_trivial()) return "trivial";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < free_rank_; ++i) {
    out << (first ? "" : " x ") << "Z";
    first = false;
  }
  for (auto f : factors_) {
    out << (first ? "" : " x ") << "Z/" << f;
    first = false;
  }
  return out.str();
}

namespace {

struct Echelon {
  IntegerMatrix rows;               // fraction-free row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Bareiss fraction-free elimination on an integer matrix.
Echelon bareiss(IntegerMatrix a) {
  Echelon out;
  const std::size_t rows = a.rows(), cols = a.cols();
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r)
      for (std::size_t k = 0; k < cols; ++k) std::swap(a(r, k), a(pivot, k));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t k = c + 1; k < cols; ++k) a(i, k) = (a(r, c) * a(i, k) - a(i, c) * a(r, k)) / prev;
      a(i, c) = 0;
    }
    prev = a(r, c);
    out.pivots.push_back(c);
    ++r;
  }
  out.rows = std::move(a);
  return out;
}

IntegerMatrix clear_denominators(const RationalMatrix& m) {
  IntegerMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BigInt l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) l = bmp::lcm(l, bmp::denominator(m(r, c)));
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(r, c) = bmp::numerator(m(r, c)) * (l / bmp::denominator(m(r, c)));
  }
  return out;
}

}  // namespace

std::size_t rank(const RationalMatrix& m) { return bareiss(clear_denominators(m)).pivots.size(); }

std::vector<std::vector<BigRational>> kernel(const RationalMatrix& m) {
  const std::size_t cols = m.cols();
  Echelon e = bareiss(clear_denominators(m));
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;

  std::vector<std::vector<BigRational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<BigRational> v(cols, BigRational(0));
    v[free] = 1;
    for (std::size_t i = e.pivots.size(); i-- > 0;) {
      const std::size_t pc = e.pivots[i];
      BigRational acc = 0;
      for (std::size_t k = pc + 1; k < cols; ++k)
        if (e.rows(i, k) != 0) acc += BigRational(e.rows(i, k)) * v[k];
      v[pc] = -acc / BigRational(e.rows(i, pc));
    }
    BigInt l = 1, g = 0;
    for (const auto& x : v) l = bmp::lcm(l, bmp::denominator(x));
    for (auto& x : v) {
      x *= l;
      g = bmp::gcd(g, bmp::numerator(x));
    }
    if (g > 1)
      for (auto& x : v) x /= g;
    basis.push_back(std::move(v));
  }
  return basis;
}

SmithForm smith_normal_form(const IntegerMatrix& input) {
  IntegerMatrix a = input;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<BigInt> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Pivot: smallest nonzero absolute value in the trailing block.
    std::size_t pr = rows, pc = cols;
    BigInt best = 0;
    for (std::size_t r = t; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c) {
        if (a(r, c) == 0) continue;
        BigInt v = bmp::abs(a(r, c));
        if (pr == rows || v < best) {
          best = v;
          pr = r;
          pc = c;
        }
      }
    if (pr == rows) break;
    for (std::size_t c = 0; c < cols; ++c) std::swap(a(t, c), a(pr, c));
    for (std::size_t r = 0; r < rows; ++r) std::swap(a(r, t), a(r, pc));

    bool clean = true;
    for (std::size_t r = t + 1; r < rows; ++r) {
      if (a(r, t) == 0) continue;
      BigInt q = a(r, t) / a(t, t);
      for (std::size_t c = t; c < cols; ++c) a(r, c) -= q * a(t, c);
      if (a(r, t) != 0) clean = false;
    }
    for (std::size_t c = t + 1; c < cols; ++c) {
      if (a(t, c) == 0) continue;
      BigInt q = a(t, c) / a(t, t);
      for (std::size_t r = t; r < rows; ++r) a(r, c) -= q * a(r, t);
      if (a(t, c) != 0) clean = false;
    }
    if (!clean) continue;  // a smaller remainder appeared; pivot again

    // Divisibility: fold any row whose entries the pivot does not divide into row t.
    bool divides = true;
    for (std::size_t r = t + 1; r < rows && divides; ++r)
      for (std::size_t c = t + 1; c < cols; ++c)
        if (a(r, c) % a(t, t) != 0) {
          for (std::size_t k = t; k < cols; ++k) a(t, k) += a(r, k);
          divides = false;
          break;
        }
    if (!divides) continue;

    diag.push_back(bmp::abs(a(t, t)));
    ++t;
  }
  SmithForm out;
  out.diagonal = diag;
  out.cokernel = AbelianGroup::from_diagonal(diag, cols - diag.size());
  return out;
}

}  // namespace branchcover::exact
