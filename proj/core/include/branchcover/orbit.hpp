#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace branchcover::orbit {

/// Circle action on the unit sphere of C^2 with weights (k, l):
/// theta . (z1, z2) = (e^{i k theta} z1, e^{i l theta} z2).
struct WeightedAction {
  int k = 1;
  int l = 1;

  /// Requires k >= l >= 1 and gcd(k, l) = 1. Throws SpecViolation.
  static WeightedAction make(int k, int l);
  friend bool operator==(const WeightedAction&, const WeightedAction&) = default;
};

/// Tolerances shared by the orbit checks and the CLI.
struct Tolerances {
  double grid = 1e-12;
  double minimization = 1e-6;
  double oracle_gate = 1e-3;
  double cone_angle = 1e-8;
};

/// Warped metric dt^2 + f(t)^2 dphi^2 on [0, T] x (R / 2 pi Z).
class RevolutionProfile {
 public:
  enum class Kind { WeightedQuotient, Suspension, Doubled };

  /// f(t) = sin t cos t / sqrt(l^2 sin^2 t + k^2 cos^2 t) on [0, pi/2].
  static RevolutionProfile weighted(WeightedAction action);
  /// f(t) = sin(t) / n on [0, pi]. Requires n >= 1.
  static RevolutionProfile suspension(int n);
  /// 2 f on the domain of `inner`.
  static RevolutionProfile doubled(const RevolutionProfile& inner);

  Kind kind() const noexcept { return kind_; }
  double domain_end() const noexcept { return end_; }
  double operator()(double t) const;
  /// Weights of a weighted quotient, or of the profile a doubled one was built from.
  WeightedAction action() const noexcept { return action_; }
  int suspension_order() const noexcept { return n_; }
  const RevolutionProfile* inner() const noexcept { return inner_.get(); }
  /// "S(3,2)", "Susp(4)", "2*S(3,2)".
  std::string name() const;

 private:
  RevolutionProfile() = default;
  Kind kind_ = Kind::WeightedQuotient;
  double end_ = 0;
  WeightedAction action_{};
  int n_ = 1;
  std::shared_ptr<const RevolutionProfile> inner_;
};

RevolutionProfile profile(WeightedAction action);
/// 2 f_{k,l}.
RevolutionProfile branched_double(WeightedAction action);

/// 2 pi f'(0+) and 2 pi |f'(T-)| from one-sided differences refined by Richardson extrapolation.
std::pair<double, double> cone_angles(const RevolutionProfile& p);

struct Comparison {
  bool dominated = true;
  /// max over the grid of fB - fA; nonpositive when dominated.
  double max_violation = 0;
  double witness_t = 0;
  std::size_t grid = 0;
};

/// Checks fA(t) >= fB(t) - tolerance on `grid` uniformly spaced points including both ends.
/// Throws SpecViolation when the domains differ or grid < 2.
Comparison compare(const RevolutionProfile& a, const RevolutionProfile& b, std::size_t grid, double tolerance = 1e-12);

using Point = std::array<std::complex<double>, 2>;

/// Distance in the orbit space: min over theta of the round distance from p to theta . q,
/// by dense sampling and golden-section refinement. Throws SpecViolation unless |p| = |q| = 1.
double orbit_distance(WeightedAction action, const Point& p, const Point& q);

/// Orbit-space coordinates (t, phi) with t = atan(|z2| / |z1|) and phi = l arg z1 - k arg z2.
std::pair<double, double> orbit_coordinates(WeightedAction action, const Point& p);

/// Geodesic distance in dt^2 + f^2 dphi^2 by shooting over the Clairaut constant, together with the
/// two paths through the cone points. Requires a profile with a single interior maximum.
double surface_distance(const RevolutionProfile& p, double t1, double phi1, double t2, double phi2);

struct ValidationResult {
  double max_discrepancy = 0;
  std::size_t samples = 0;
  Point worst_p{};
  Point worst_q{};
};

/// Compares orbit_distance with surface_distance on random orbit pairs. Throws OracleMismatch when the
/// largest discrepancy exceeds `gate`.
ValidationResult validate_profile(WeightedAction action, std::size_t samples, std::uint64_t seed = 1,
                                  double gate = Tolerances{}.oracle_gate);

/// Round distance on S^2(1/2) between Hopf images.
double hopf_distance(const Point& p, const Point& q);

/// Rows "t,f1,f2,..." on `grid` points for profiles sharing a domain; RFC 4180 quoting for names.
std::string profile_csv(const std::vector<RevolutionProfile>& profiles, std::size_t grid);

/// Uniform point on the unit sphere of C^2.
template <class Rng>
Point random_point(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double x[4];
  double norm = 0;
  do {
    norm = 0;
    for (double& v : x) {
      v = n(rng);
      norm += v * v;
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  return {std::complex<double>(x[0] / norm, x[1] / norm), std::complex<double>(x[2] / norm, x[3] / norm)};
}

}  // namespace branchcover::orbit
