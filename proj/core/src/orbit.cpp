#include "branchcover/orbit.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <numeric>
#include <sstream>

#include "branchcover/errors.hpp"

namespace branchcover::orbit {

namespace {

constexpr double kPi = boost::math::double_constants::pi;
constexpr double kTwoPi = boost::math::double_constants::two_pi;

}  // namespace

WeightedAction WeightedAction::make(int k, int l) {
  if (l < 1 || k < l) throw SpecViolation("weights need k >= l >= 1");
  if (std::gcd(k, l) != 1) throw SpecViolation("weights need gcd(k, l) = 1");
  return {k, l};
}

RevolutionProfile RevolutionProfile::weighted(WeightedAction action) {
  action = WeightedAction::make(action.k, action.l);
  RevolutionProfile p;
  p.kind_ = Kind::WeightedQuotient;
  p.end_ = kPi / 2;
  p.action_ = action;
  return p;
}

RevolutionProfile RevolutionProfile::suspension(int n) {
  if (n < 1) throw SpecViolation("suspension order must be at least 1");
  RevolutionProfile p;
  p.kind_ = Kind::Suspension;
  p.end_ = kPi;
  p.n_ = n;
  return p;
}

RevolutionProfile RevolutionProfile::doubled(const RevolutionProfile& inner) {
  RevolutionProfile p;
  p.kind_ = Kind::Doubled;
  p.end_ = inner.end_;
  p.action_ = inner.action_;
  p.n_ = inner.n_;
  p.inner_ = std::make_shared<const RevolutionProfile>(inner);
  return p;
}

double RevolutionProfile::operator()(double t) const {
  switch (kind_) {
    case Kind::WeightedQuotient: {
      const double s = std::sin(t), c = std::cos(t);
      const double k = action_.k, l = action_.l;
      return s * c / std::sqrt(l * l * s * s + k * k * c * c);
    }
    case Kind::Suspension:
      return std::sin(t) / n_;
    case Kind::Doubled:
      return 2 * (*inner_)(t);
  }
  return 0;
}

std::string RevolutionProfile::name() const {
  switch (kind_) {
    case Kind::WeightedQuotient:
      return "S(" + std::to_string(action_.k) + "," + std::to_string(action_.l) + ")";
    case Kind::Suspension:
      return "Susp(" + std::to_string(n_) + ")";
    case Kind::Doubled:
      return "2*" + inner_->name();
  }
  return "?";
}

RevolutionProfile profile(WeightedAction action) { return RevolutionProfile::weighted(action); }

RevolutionProfile branched_double(WeightedAction action) {
  return RevolutionProfile::doubled(RevolutionProfile::weighted(action));
}

std::pair<double, double> cone_angles(const RevolutionProfile& p) {
  const double end = p.domain_end();
  auto extrapolate = [](auto&& slope) {
    constexpr int levels = 7;
    double table[levels][levels];
    double h = 1e-2;
    for (int i = 0; i < levels; ++i, h /= 2) {
      table[i][0] = slope(h);
      for (int j = 1; j <= i; ++j)
        table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (std::ldexp(1.0, j) - 1);
    }
    return table[levels - 1][levels - 1];
  };
  const double at_start = extrapolate([&](double h) { return (p(h) - p(0)) / h; });
  const double at_end = extrapolate([&](double h) { return (p(end - h) - p(end)) / h; });
  return {kTwoPi * at_start, kTwoPi * std::abs(at_end)};
}

Comparison compare(const RevolutionProfile& a, const RevolutionProfile& b, std::size_t grid, double tolerance) {
  if (grid < 2) throw SpecViolation("comparison grid needs at least 2 points");
  if (std::abs(a.domain_end() - b.domain_end()) > 1e-15) throw SpecViolation("profiles have different domains");
  Comparison out;
  out.grid = grid;
  out.max_violation = -std::numeric_limits<double>::infinity();
  const double end = a.domain_end();
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = end * static_cast<double>(i) / static_cast<double>(grid - 1);
    const double v = b(t) - a(t);
    if (v > out.max_violation) {
      out.max_violation = v;
      out.witness_t = t;
    }
  }
  out.dominated = out.max_violation <= tolerance;
  return out;
}

namespace {

double norm2(const Point& p) { return std::norm(p[0]) + std::norm(p[1]); }

double chord2(WeightedAction a, const Point& p, const Point& q, double theta) {
  const auto e1 = std::polar(1.0, a.k * theta), e2 = std::polar(1.0, a.l * theta);
  return std::norm(p[0] - e1 * q[0]) + std::norm(p[1] - e2 * q[1]);
}

}  // namespace

double orbit_distance(WeightedAction action, const Point& p, const Point& q) {
  if (std::abs(norm2(p) - 1) > 1e-9 || std::abs(norm2(q) - 1) > 1e-9)
    throw SpecViolation("orbit_distance needs unit vectors");
  if (p == q) return 0;
  constexpr std::size_t samples = 2048;
  const double step = kTwoPi / samples;
  std::vector<double> value(samples);
  for (std::size_t i = 0; i < samples; ++i) value[i] = chord2(action, p, q, step * static_cast<double>(i));

  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < samples; ++i) {
    const double prev = value[(i + samples - 1) % samples], next = value[(i + 1) % samples];
    if (value[i] <= prev && value[i] <= next) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(), [&](auto x, auto y) { return value[x] < value[y]; });
  if (minima.size() > 4) minima.resize(4);

  const double invphi = (std::sqrt(5.0) - 1) / 2;
  double best = *std::min_element(value.begin(), value.end());
  for (std::size_t i : minima) {
    double lo = step * (static_cast<double>(i) - 1), hi = step * (static_cast<double>(i) + 1);
    double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
    double f1 = chord2(action, p, q, x1), f2 = chord2(action, p, q, x2);
    while (hi - lo > 1e-11) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - invphi * (hi - lo);
        f1 = chord2(action, p, q, x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + invphi * (hi - lo);
        f2 = chord2(action, p, q, x2);
      }
    }
    best = std::min({best, f1, f2});
  }
  return 2 * std::asin(std::min(1.0, std::sqrt(std::max(0.0, best)) / 2));
}

std::pair<double, double> orbit_coordinates(WeightedAction action, const Point& p) {
  const double t = std::atan2(std::abs(p[1]), std::abs(p[0]));
  double phi = action.l * std::arg(p[0]) - action.k * std::arg(p[1]);
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0) phi += kTwoPi;
  return {t, phi};
}

namespace {

// Clairaut geodesics with constant c on a unimodal profile.
class Shooter {
 public:
  Shooter(const RevolutionProfile& f, double t1, double t2) : f_(f), t1_(t1), t2_(t2) {
    double lo = 0, hi = f.domain_end();
    const double invphi = (std::sqrt(5.0) - 1) / 2;
    while (hi - lo > 1e-13) {
      const double a = hi - invphi * (hi - lo), b = lo + invphi * (hi - lo);
      if (f(a) < f(b)) lo = a;
      else hi = b;
    }
    peak_ = (lo + hi) / 2;
    cmax_ = std::min(f(t1), f(t2));
  }

  double cmax() const { return cmax_; }

  // Angle swept and length of the geodesic of the given family.
  std::pair<double, double> monotone(double c) const {
    return f_(t1_) <= f_(t2_) ? segment(t1_, t2_, c) : segment(t2_, t1_, c);
  }
  std::pair<double, double> turning_left(double c) const {
    const double a = level(c, 0, peak_, true);
    return add(segment(a, t1_, c), segment(a, t2_, c));
  }
  std::pair<double, double> turning_right(double c) const {
    const double b = level(c, peak_, f_.domain_end(), false);
    return add(segment(b, t1_, c), segment(b, t2_, c));
  }

 private:
  static std::pair<double, double> add(std::pair<double, double> x, std::pair<double, double> y) {
    return {x.first + y.first, x.second + y.second};
  }

  // f(x) = c on a monotone stretch.
  double level(double c, double lo, double hi, bool increasing) const {
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
      const double mid = (lo + hi) / 2;
      if ((f_(mid) < c) == increasing) lo = mid;
      else hi = mid;
    }
    return increasing ? hi : lo;
  }

  // Integrals from `anchor` to `other` with t = anchor +- s^2, which removes the square-root
  // singularity when f(anchor) = c.
  std::pair<double, double> segment(double anchor, double other, double c) const {
    const double span = std::abs(other - anchor);
    if (span == 0) return {0, 0};
    const double dir = other > anchor ? 1 : -1;
    const double top = std::sqrt(span);
    auto gap = [&](double s) {
      const double fv = f_(anchor + dir * s * s);
      return std::pair{fv, (fv - c) * (fv + c)};
    };
    boost::math::quadrature::tanh_sinh<double> q;
    const double angle = c == 0 ? 0.0 : q.integrate([&](double s) {
      const auto [fv, d] = gap(s);
      return d <= 0 || fv <= 0 ? 0.0 : 2 * s * c / (fv * std::sqrt(d));
    }, 0.0, top);
    const double length = q.integrate([&](double s) {
      const auto [fv, d] = gap(s);
      return d <= 0 ? 2 * s : 2 * s * fv / std::sqrt(d);
    }, 0.0, top);
    return {angle, length};
  }

  const RevolutionProfile& f_;
  double t1_, t2_;
  double peak_ = 0;
  double cmax_ = 0;
};

}  // namespace

double surface_distance(const RevolutionProfile& p, double t1, double phi1, double t2, double phi2) {
  const double end = p.domain_end();
  t1 = std::clamp(t1, 0.0, end);
  t2 = std::clamp(t2, 0.0, end);
  if (t1 > t2) std::swap(t1, t2);
  double dphi = std::fmod(std::abs(phi1 - phi2), kTwoPi);
  if (dphi > kPi) dphi = kTwoPi - dphi;

  double best = std::min(t1 + t2, 2 * end - t1 - t2);
  if (dphi == 0) best = std::min(best, t2 - t1);
  Shooter shoot(p, t1, t2);
  const double cmax = shoot.cmax();
  if (cmax <= 1e-14) return best;

  constexpr int n = 48;
  using Family = std::pair<double, double> (Shooter::*)(double) const;
  const Family families[] = {&Shooter::monotone, &Shooter::turning_left, &Shooter::turning_right};
  for (double target : {dphi, kTwoPi - dphi}) {
    for (int fam = 0; fam < 3; ++fam) {
      auto eval = [&](double c) { return (shoot.*families[fam])(c); };
      std::vector<double> cs;
      if (fam == 0) {
        for (int j = 0; j <= n; ++j) cs.push_back(cmax * j / n);
      } else {
        for (int j = 1; j <= n; ++j) cs.push_back(cmax * (static_cast<double>(j) / n) * (static_cast<double>(j) / n));
      }
      std::vector<std::pair<double, double>> vals;
      for (double c : cs) vals.push_back(eval(c));
      for (std::size_t j = 0; j < cs.size(); ++j)
        if (std::abs(vals[j].first - target) < 1e-12) best = std::min(best, vals[j].second);
      for (std::size_t j = 0; j + 1 < cs.size(); ++j) {
        const double ga = vals[j].first - target, gb = vals[j + 1].first - target;
        if ((ga < 0) == (gb < 0)) continue;
        std::uintmax_t iters = 60;
        auto [lo, hi] = boost::math::tools::toms748_solve([&](double c) { return eval(c).first - target; }, cs[j],
                                                          cs[j + 1], ga, gb,
                                                          boost::math::tools::eps_tolerance<double>(40), iters);
        best = std::min(best, eval((lo + hi) / 2).second);
      }
    }
  }
  return best;
}

double hopf_distance(const Point& p, const Point& q) {
  auto image = [](const Point& z) {
    const auto w = z[0] * std::conj(z[1]);
    return std::array<double, 3>{std::norm(z[0]) - std::norm(z[1]), 2 * w.real(), 2 * w.imag()};
  };
  const auto u = image(p), v = image(q);
  const double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  const std::array<double, 3> cross{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
  const double sine = std::sqrt(cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]);
  return std::atan2(sine, dot) / 2;
}

ValidationResult validate_profile(WeightedAction action, std::size_t samples, std::uint64_t seed, double gate) {
  if (samples < 1) throw SpecViolation("validation needs at least one sample");
  action = WeightedAction::make(action.k, action.l);
  const auto f = profile(action);
  std::mt19937_64 rng(seed);
  ValidationResult out;
  out.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    const Point p = random_point(rng), q = random_point(rng);
    const double direct = orbit_distance(action, p, q);
    const auto [t1, phi1] = orbit_coordinates(action, p);
    const auto [t2, phi2] = orbit_coordinates(action, q);
    const double geodesic = surface_distance(f, t1, phi1, t2, phi2);
    const double delta = std::abs(direct - geodesic);
    if (delta > out.max_discrepancy || i == 0) {
      out.max_discrepancy = delta;
      out.worst_p = p;
      out.worst_q = q;
    }
  }
  if (out.max_discrepancy > gate) {
    std::ostringstream os;
    os << "profile " << f.name() << " disagrees with orbit distances by " << out.max_discrepancy;
    throw OracleMismatch(os.str(), out.max_discrepancy);
  }
  return out;
}

std::string profile_csv(const std::vector<RevolutionProfile>& profiles, std::size_t grid) {
  if (profiles.empty()) throw SpecViolation("no profiles to tabulate");
  if (grid < 2) throw SpecViolation("profile grid needs at least 2 points");
  const double end = profiles.front().domain_end();
  for (const auto& p : profiles)
    if (std::abs(p.domain_end() - end) > 1e-15) throw SpecViolation("profiles have different domains");
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os.precision(17);
  os << "t";
  for (const auto& p : profiles) os << ',' << quote(p.name());
  os << '\n';
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = end * static_cast<double>(i) / static_cast<double>(grid - 1);
    os << t;
    for (const auto& p : profiles) os << ',' << p(t);
    os << '\n';
  }
  return os.str();
}

}  // namespace branchcover::orbit
