#include "branchcover/spaceform.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "branchcover/errors.hpp"

namespace branchcover::spaceform {

using exact::ExactScalar;
using groups::Ambient;
using groups::Elem;
using groups::Quaternion;
using groups::RotationClass;
using groups::UnitQuaternion;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

UnitQuaternion unit(Quaternion q) { return UnitQuaternion(std::move(q)); }

struct Construction {
  std::vector<Spin4Element> generators;
  Spin4Element iota_hat;
};

Construction construct(const SpaceFormSpec& spec) {
  const UnitQuaternion one;
  const UnitQuaternion i = unit(Quaternion::i()), j = unit(Quaternion::j());
  const ExactScalar half = ExactScalar::from_rational(1, 2);
  const UnitQuaternion omega = unit(Quaternion(half, half, half, half));
  Construction c;
  std::visit(Overloaded{
                 [&](const Cyclic& s) {
                   // Left and right half-angles pi(1+p)/m and pi(p-1)/m.
                   c.generators = {{unit(Quaternion::exp_i(1 + s.p, 2 * s.m)), unit(Quaternion::exp_i(s.p - 1, 2 * s.m))},
                                   {-one, -one}};
                   c.iota_hat = {j, j};
                 },
                 [&](const Tetrahedral& s) {
                   std::int64_t three_k = 1;
                   for (std::int64_t n = 0; n < s.k; ++n) three_k *= 3;
                   c.generators = {{one, unit(Quaternion::exp_i(1, 2 * s.m))},
                                   {omega, unit(Quaternion::exp_i(1, three_k))},
                                   {i, one},
                                   {j, one}};
                   const ExactScalar r = ExactScalar::sqrt2() * half;
                   c.iota_hat = {unit(Quaternion(ExactScalar(0), r, r, ExactScalar(0))), j};
                 },
                 [&](const Icosahedral& s) {
                   const ExactScalar phi = ExactScalar::golden_ratio();
                   const UnitQuaternion ico =
                       unit(Quaternion(ExactScalar(0), half, half * phi, half * (phi - ExactScalar(1))));
                   c.generators = {{i, one}, {j, one}, {omega, one}, {ico, one},
                                   {one, unit(Quaternion::exp_i(1, 2 * s.m))}};
                   c.iota_hat = {j, j};
                 }},
             spec);

  int left = c.iota_hat.left.value().conductor(), right = c.iota_hat.right.value().conductor();
  for (const auto& g : c.generators) {
    left = std::lcm(left, g.left.value().conductor());
    right = std::lcm(right, g.right.value().conductor());
  }
  for (auto& g : c.generators) g = g.lifted_to(left, right);
  c.iota_hat = c.iota_hat.lifted_to(left, right);
  return c;
}

bool coprime(std::int64_t a, std::int64_t b) { return std::gcd(a, b) == 1; }

}  // namespace

std::string case_name(const SpaceFormSpec& spec) {
  return std::visit(Overloaded{[](const Cyclic&) { return std::string("cyclic"); },
                               [](const Tetrahedral&) { return std::string("tetrahedral"); },
                               [](const Icosahedral&) { return std::string("icosahedral"); }},
                    spec);
}

std::string describe(const SpaceFormSpec& spec) {
  return std::visit(
      Overloaded{[](const Cyclic& s) { return "cyclic m=" + std::to_string(s.m) + " p=" + std::to_string(s.p); },
                 [](const Tetrahedral& s) {
                   return "tetrahedral m=" + std::to_string(s.m) + " k=" + std::to_string(s.k);
                 },
                 [](const Icosahedral& s) { return "icosahedral m=" + std::to_string(s.m); }},
      spec);
}

void validate(const SpaceFormSpec& spec) {
  std::visit(Overloaded{[](const Cyclic& s) {
                          if (s.m < 1 || s.m % 2 == 0) throw SpecViolation("cyclic order m must be odd and positive");
                          if (!coprime(s.p, s.m)) throw SpecViolation("p must be coprime to m");
                        },
                        [](const Tetrahedral& s) {
                          if (s.m < 1 || !coprime(s.m, 6)) throw SpecViolation("m must be positive and coprime to 6");
                          if (s.k < 0 || s.k == 1) throw SpecViolation("k must be 0 or at least 2");
                          if (s.k > 8) throw SpecViolation("k above 8 is outside the supported range");
                        },
                        [](const Icosahedral& s) {
                          if (s.m < 1 || !coprime(s.m, 30)) throw SpecViolation("m must be positive and coprime to 30");
                        }},
             spec);
}

SpaceFormCertificate build_unchecked(const SpaceFormSpec& spec, std::size_t cap) {
  Construction c = construct(spec);
  std::vector<Spin4Element> extended = c.generators;
  extended.push_back(c.iota_hat);
  SpaceFormCertificate cert{spec,
                            groups::generate_group(Ambient::Spin4, c.generators, cap),
                            groups::generate_group(Ambient::SO4, c.generators, cap),
                            c.iota_hat,
                            groups::generate_group(Ambient::Spin4, extended, cap),
                            groups::generate_group(Ambient::SO4, extended, cap),
                            {}};
  cert.abelianization = groups::abelianization(cert.pi);
  return cert;
}

SpaceFormCertificate build(const SpaceFormSpec& spec, std::size_t cap) {
  validate(spec);
  return build_unchecked(spec, cap);
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult& VerificationReport::check(int number) const {
  for (const auto& c : checks)
    if (c.number == number) return c;
  throw std::out_of_range("no check numbered " + std::to_string(number));
}

namespace {

CheckResult check_free(const SpaceFormCertificate& cert) {
  CheckResult r{1, "free_action", true, "", ""};
  auto freeness = groups::acts_freely(cert.pi);
  r.passed = freeness.free;
  r.detail = "|Pi| = " + std::to_string(cert.pi.order());
  if (!r.passed) r.witness = freeness.witness->to_string();
  return r;
}

CheckResult check_odd_abelianization(const SpaceFormCertificate& cert) {
  CheckResult r{2, "odd_abelianization", true, "", ""};
  r.detail = "Pi/[Pi,Pi] = " + cert.abelianization.to_string();
  r.passed = !cert.abelianization.has_two_torsion() && cert.abelianization.is_finite();
  if (!r.passed) {
    // An element whose image in the abelianization has even order.
    const auto& e = cert.pi.engine();
    auto whole = groups::whole_group(e);
    auto d = groups::derived_subgroup(e, whole);
    for (Elem x : whole.elements()) {
      std::size_t t = 1;
      for (Elem y = x; !d.contains(y); y = e.multiply(y, x)) ++t;
      if (t % 2 == 0) {
        r.witness = cert.pi.element(x).to_string() + " has order " + std::to_string(t) + " modulo [Pi,Pi]";
        break;
      }
    }
  }
  return r;
}

CheckResult check_normalizes(const SpaceFormCertificate& cert) {
  CheckResult r{3, "iota_normalizes_pi_hat", true, "", ""};
  const Spin4Element inv = cert.iota_hat.inverse();
  for (const auto& g : cert.pi_hat.generators()) {
    Spin4Element c = cert.iota_hat * g * inv;
    if (!cert.pi_hat.find(c)) {
      r.passed = false;
      r.witness = g.to_string();
      break;
    }
  }
  r.detail = std::to_string(cert.pi_hat.generators().size()) + " generators conjugated";
  return r;
}

CheckResult check_involution(const SpaceFormCertificate& cert) {
  CheckResult r{4, "iota_involution_circle", true, "", ""};
  const bool square_trivial = RotationClass(cert.iota_hat * cert.iota_hat).is_identity();
  const bool nontrivial = !RotationClass(cert.iota_hat).is_identity();
  auto fs = groups::fixed_set(cert.iota_hat);
  r.passed = square_trivial && nontrivial && fs.kind == groups::FixedSet::Kind::Circle;
  r.detail = "fixed set " + fs.kind_name();
  if (fs.kind == groups::FixedSet::Kind::Circle)
    r.detail += " spanned by " + fs.basis[0].to_string() + " and " + fs.basis[1].to_string();
  if (!r.passed) r.witness = cert.iota_hat.to_string();
  return r;
}

CheckResult check_normal_closure(const SpaceFormCertificate& cert) {
  CheckResult r{5, "iota_normally_generates", true, "", ""};
  auto n = groups::normal_closure(cert.gamma_hat, std::span(&cert.iota_hat, 1));
  r.passed = n.order() == cert.gamma_hat.order();
  r.detail = "normal closure order " + std::to_string(n.order()) + " of " + std::to_string(cert.gamma_hat.order());
  if (!r.passed) r.witness = "normal closure has index " + std::to_string(cert.gamma_hat.order() / n.order());
  return r;
}

CheckResult check_fixed_points_conjugate(const SpaceFormCertificate& cert) {
  CheckResult r{6, "fixed_points_conjugate_to_iota", true, "", ""};
  const auto& e = cert.gamma.engine();
  auto whole = groups::whole_group(e);
  const Elem iota = cert.gamma.index_of(cert.iota_hat);
  auto cls = groups::conjugacy_class(e, whole, iota);
  std::size_t with_fixed = 0;
  for (Elem x = 1; x < cert.gamma.order(); ++x) {
    const Spin4Element& g = cert.gamma.element(x);
    const bool by_real_part = groups::has_fixed_point(g);
    const bool by_kernel = groups::fixed_space_dimension(g) > 0;
    if (by_real_part != by_kernel) {
      r.passed = false;
      r.witness = "fixed-point criteria disagree on " + g.to_string();
      return r;
    }
    if (!by_real_part) continue;
    ++with_fixed;
    if (!std::binary_search(cls.begin(), cls.end(), x)) {
      r.passed = false;
      r.witness = g.to_string();
      return r;
    }
  }
  r.detail = std::to_string(with_fixed) + " elements with fixed points, class of iota has " +
             std::to_string(cls.size());
  if (with_fixed != cls.size()) {
    r.passed = false;
    r.witness = "class of iota contains elements without fixed points";
  }
  return r;
}

CheckResult check_gcd(const SpaceFormCertificate& cert) {
  CheckResult r{7, "intersection_gcd", true, "", ""};
  auto orders = groups::subgroup_intersections(cert.pi_hat);
  r.passed = orders.gcd <= 2;
  r.detail = "left intersection " + std::to_string(orders.with_left_factor) +
             ", right intersection " + std::to_string(orders.with_right_factor) +
             ", gcd " + std::to_string(orders.gcd);
  if (!r.passed) r.witness = "gcd " + std::to_string(orders.gcd);
  return r;
}

}  // namespace

VerificationReport verify(const SpaceFormCertificate& cert) {
  VerificationReport report;
  report.checks = {check_free(cert),          check_odd_abelianization(cert),     check_normalizes(cert),
                   check_involution(cert),    check_normal_closure(cert),         check_fixed_points_conjugate(cert),
                   check_gcd(cert)};
  return report;
}

std::vector<Spin4Element> circle_involutions_outside_pi(const SpaceFormCertificate& cert) {
  std::vector<Spin4Element> out;
  for (const auto& g : cert.gamma.elements()) {
    if (cert.pi.find(g)) continue;
    if (!RotationClass(g * g).is_identity()) continue;
    if (groups::fixed_set(g).kind != groups::FixedSet::Kind::Circle) continue;
    out.push_back(g);
  }
  return out;
}

std::vector<std::vector<Spin4Element>> involution_uniqueness_scan(const SpaceFormCertificate& cert,
                                                                  std::span<const Spin4Element> candidates) {
  const auto& e = cert.gamma.engine();
  auto whole = groups::whole_group(e);
  std::vector<std::vector<Elem>> class_members;
  std::vector<std::vector<Spin4Element>> partition;
  for (const auto& c : candidates) {
    auto idx = cert.gamma.find(c);
    if (!idx) throw ValidationError("candidate " + c.to_string() + " is not in gamma");
    if (*idx == 0 || !RotationClass(c * c).is_identity())
      throw ValidationError("candidate " + c.to_string() + " is not an involution");
    if (groups::fixed_set(c).kind != groups::FixedSet::Kind::Circle)
      throw ValidationError("candidate " + c.to_string() + " does not fix a circle");
    std::size_t slot = 0;
    while (slot < class_members.size() &&
           !std::binary_search(class_members[slot].begin(), class_members[slot].end(), *idx))
      ++slot;
    if (slot == class_members.size()) {
      class_members.push_back(groups::conjugacy_class(e, whole, *idx));
      partition.emplace_back();
    }
    partition[slot].push_back(cert.gamma.element(*idx));
  }
  return partition;
}

std::vector<SpaceFormSpec> default_sweep() {
  std::vector<SpaceFormSpec> out;
  for (std::int64_t m : {1, 3, 5, 7, 9, 15})
    for (std::int64_t p : {1, 2, 4}) out.emplace_back(Cyclic{m, p});
  for (std::int64_t m : {1, 5, 7})
    for (std::int64_t k : {0, 2}) out.emplace_back(Tetrahedral{m, k});
  for (std::int64_t m : {1, 7, 11}) out.emplace_back(Icosahedral{m});
  return out;
}

std::string serialize(const SpaceFormCertificate& cert, const VerificationReport& report) {
  std::ostringstream out;
  out << "schema: branchcover.spaceform/1\n";
  out << "case: " << case_name(cert.spec) << "\n";
  std::visit(Overloaded{[&](const Cyclic& s) { out << "m: " << s.m << "\np: " << s.p << "\n"; },
                        [&](const Tetrahedral& s) { out << "m: " << s.m << "\nk: " << s.k << "\n"; },
                        [&](const Icosahedral& s) { out << "m: " << s.m << "\n"; }},
             cert.spec);
  out << "pi_hat_order: " << cert.pi_hat.order() << "\n";
  out << "pi_order: " << cert.pi.order() << "\n";
  out << "gamma_hat_order: " << cert.gamma_hat.order() << "\n";
  out << "gamma_order: " << cert.gamma.order() << "\n";
  out << "conductors: " << cert.pi_hat.left_conductor() << " " << cert.pi_hat.right_conductor() << "\n";
  out << "iota_hat: " << cert.iota_hat.to_string() << "\n";
  out << "abelianization: " << cert.abelianization.to_string() << "\n";
  for (const auto& c : report.checks) {
    const std::string key = "check." + std::to_string(c.number) + "." + c.name;
    out << key << ": " << (c.passed ? "pass" : "FAIL") << "\n";
    out << key << ".detail: " << c.detail << "\n";
    if (!c.witness.empty()) out << key << ".witness: " << c.witness << "\n";
  }
  out << "verdict: " << (report.all_passed() ? "pass" : "FAIL") << "\n";
  return out.str();
}

}  // namespace branchcover::spaceform
