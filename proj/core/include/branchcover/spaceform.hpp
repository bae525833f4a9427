#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "branchcover/linalg.hpp"
#include "branchcover/rotation_group.hpp"

namespace branchcover::spaceform {

using groups::FiniteRotationGroup;
using groups::Spin4Element;

/// zeta * (z1, z2) = (zeta z1, zeta^p z2) with zeta a primitive m-th root of unity.
struct Cyclic {
  std::int64_t m = 1;
  std::int64_t p = 1;
};

/// Binary tetrahedral family; k = 0 means the cube-root twist is trivial.
struct Tetrahedral {
  std::int64_t m = 1;
  std::int64_t k = 0;
};

struct Icosahedral {
  std::int64_t m = 1;
};

using SpaceFormSpec = std::variant<Cyclic, Tetrahedral, Icosahedral>;

/// "cyclic m=3 p=1", "tetrahedral m=5 k=0", "icosahedral m=7".
std::string describe(const SpaceFormSpec& spec);
std::string case_name(const SpaceFormSpec& spec);
/// Throws SpecViolation when the arithmetic constraints of the family fail.
void validate(const SpaceFormSpec& spec);

struct SpaceFormCertificate {
  SpaceFormSpec spec;
  FiniteRotationGroup pi_hat;     ///< Spin(4) level
  FiniteRotationGroup pi;         ///< SO(4) image
  Spin4Element iota_hat;
  FiniteRotationGroup gamma_hat;  ///< <pi_hat, iota_hat>
  FiniteRotationGroup gamma;      ///< SO(4) image of gamma_hat
  exact::AbelianGroup abelianization;  ///< of pi
};

/// Validates the spec, then builds the groups.
SpaceFormCertificate build(const SpaceFormSpec& spec, std::size_t cap = groups::kDefaultGroupCap);
/// Builds without validating; used for negative controls such as an even cyclic order.
SpaceFormCertificate build_unchecked(const SpaceFormSpec& spec, std::size_t cap = groups::kDefaultGroupCap);

struct CheckResult {
  int number = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  /// Offending element or data when the check fails; empty on success.
  std::string witness;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  const CheckResult& check(int number) const;
};

/// Runs the seven checks. Never throws for a failed check; failures carry witnesses.
VerificationReport verify(const SpaceFormCertificate& cert);

/// Involutions of gamma outside pi whose fixed set is a circle.
std::vector<Spin4Element> circle_involutions_outside_pi(const SpaceFormCertificate& cert);

/// Partitions the candidates into gamma-conjugacy classes, in order of first appearance.
/// Every candidate must be an involution of gamma with a circle of fixed points (ValidationError otherwise).
std::vector<std::vector<Spin4Element>> involution_uniqueness_scan(const SpaceFormCertificate& cert,
                                                                  std::span<const Spin4Element> candidates);

/// The parameter sweep used by the test suites and `spaceform sweep`.
std::vector<SpaceFormSpec> default_sweep();

/// Stable key-value text, one "key: value" pair per line.
std::string serialize(const SpaceFormCertificate& cert, const VerificationReport& report);

}  // namespace branchcover::spaceform
