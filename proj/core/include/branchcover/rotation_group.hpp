#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "branchcover/finite_group.hpp"
#include "branchcover/quaternion.hpp"

namespace branchcover::groups {

inline constexpr std::size_t kDefaultGroupCap = 100000;

enum class Ambient { Spin4, SO4 };

/// Finite subgroup of Spin(4) or SO(4), held as an explicit element list
/// together with its Cayley tables. In SO(4) every element is the
/// sign-normalised representative of its class.
class FiniteRotationGroup {
 public:
  Ambient ambient() const noexcept { return ambient_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Spin4Element>& elements() const noexcept { return elements_; }
  const Spin4Element& element(Elem x) const { return elements_.at(x); }
  const std::vector<Spin4Element>& generators() const noexcept { return generators_; }
  const FiniteGroup& engine() const noexcept { return engine_; }
  int left_conductor() const noexcept { return left_conductor_; }
  int right_conductor() const noexcept { return right_conductor_; }

  /// Index of `g` (after sign normalisation in SO(4)), if present.
  std::optional<Elem> find(const Spin4Element& g) const;
  /// Throws NotMember when absent.
  Elem index_of(const Spin4Element& g) const;

 private:
  friend FiniteRotationGroup generate_group(Ambient, std::span<const Spin4Element>, std::size_t);
  Spin4Element canonical(const Spin4Element& g) const;

  Ambient ambient_ = Ambient::Spin4;
  int left_conductor_ = 1;
  int right_conductor_ = 1;
  std::vector<Spin4Element> generators_;
  std::vector<Spin4Element> elements_;
  std::unordered_map<Spin4Element, Elem> index_;
  FiniteGroup engine_{std::vector<std::vector<Elem>>{}};
};

/// Breadth-first closure of `gens`; throws CapExceeded when more than `cap` elements appear.
FiniteRotationGroup generate_group(Ambient ambient, std::span<const Spin4Element> gens,
                                   std::size_t cap = kDefaultGroupCap);

/// Element-level wrappers over the index-based engine.
std::vector<Spin4Element> conjugacy_class(const FiniteRotationGroup& g, const Spin4Element& x);
Subgroup normal_closure(const FiniteRotationGroup& g, std::span<const Spin4Element> seeds);
std::vector<Subgroup> derived_series(const FiniteRotationGroup& g);
exact::AbelianGroup abelianization(const FiniteRotationGroup& g);

struct FreenessResult {
  bool free = true;
  std::optional<Spin4Element> witness;
};

/// Free action on S^3 of an SO(4) group: every non-identity class has Re q1 != Re q2.
/// Throws WrongAmbient for Spin(4) groups.
FreenessResult acts_freely(const FiniteRotationGroup& g);

struct IntersectionOrders {
  std::size_t with_left_factor = 1;   ///< |G ∩ S^3 x {1}|
  std::size_t with_right_factor = 1;  ///< |G ∩ {1} x S^1|
  std::size_t gcd = 1;
};

/// Requires a Spin(4) group whose right factors all lie in the complex circle; WrongAmbient otherwise.
IntersectionOrders subgroup_intersections(const FiniteRotationGroup& g);

}  // namespace branchcover::groups
