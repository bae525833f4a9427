#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "branchcover/linalg.hpp"

namespace branchcover::groups {

using Elem = std::uint32_t;

/// A finite group given by its right regular action on itself.
///
/// Element 0 is the identity and `right_tables[g][x]` is the index of x * s_g
/// for generator s_g. Each table must be a permutation. Elements are
/// addressed by index; a breadth-first spanning tree supplies a word for
/// every element so products can be evaluated by walking the tables, which
/// keeps memory linear in the order.
class FiniteGroup {
 public:
  explicit FiniteGroup(std::vector<std::vector<Elem>> right_tables);

  std::size_t order() const noexcept { return order_; }
  std::size_t generator_count() const noexcept { return fwd_.size(); }
  /// Element index of the i-th generator.
  Elem generator(std::size_t i) const { return fwd_[i][0]; }
  std::vector<Elem> generators() const;

  Elem times_generator(Elem x, std::size_t g) const { return fwd_[g][x]; }
  Elem times_generator_inverse(Elem x, std::size_t g) const { return inv_[g][x]; }

  Elem multiply(Elem a, Elem b) const;
  Elem inverse(Elem a) const { return inverse_[a]; }
  /// by^-1 * g * by
  Elem conjugate(Elem g, Elem by) const { return multiply(inverse(by), multiply(g, by)); }
  /// a^-1 b^-1 a b
  Elem commutator(Elem a, Elem b) const;
  Elem power(Elem a, std::int64_t n) const;
  std::size_t element_order(Elem a) const;

  /// Generator indices (0-based) of the spanning-tree word for `a`; all letters are positive.
  std::span<const std::uint16_t> word(Elem a) const;

 private:
  std::size_t order_ = 0;
  std::vector<std::vector<Elem>> fwd_;
  std::vector<std::vector<Elem>> inv_;
  std::vector<Elem> inverse_;
  std::vector<std::uint32_t> word_offset_;
  std::vector<std::uint16_t> word_letters_;
};

/// A subgroup of a FiniteGroup, stored as a membership mask plus a generating set.
class Subgroup {
 public:
  Subgroup() = default;

  std::size_t order() const noexcept { return elements_.size(); }
  bool contains(Elem x) const { return x < mask_.size() && mask_[x]; }
  /// Members in ascending index order.
  const std::vector<Elem>& elements() const noexcept { return elements_; }
  const std::vector<Elem>& generators() const noexcept { return generators_; }
  bool is_trivial() const noexcept { return elements_.size() == 1; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.mask_ == b.mask_; }

 private:
  friend Subgroup generate(const FiniteGroup&, std::span<const Elem>);
  std::vector<bool> mask_;
  std::vector<Elem> elements_;
  std::vector<Elem> generators_;
};

Subgroup whole_group(const FiniteGroup& g);
Subgroup trivial_subgroup(const FiniteGroup& g);
/// Closure of `gens`. Checks that the order divides |G|.
Subgroup generate(const FiniteGroup& g, std::span<const Elem> gens);

/// Smallest subgroup of `ambient` containing `seeds` and normalised by `ambient`.
/// Throws NotMember when a seed lies outside `ambient`.
Subgroup normal_closure(const FiniteGroup& g, const Subgroup& ambient, std::span<const Elem> seeds);

bool is_normal(const FiniteGroup& g, const Subgroup& ambient, const Subgroup& sub);
bool is_abelian(const FiniteGroup& g, const Subgroup& h);

/// [H, H], computed as the normal closure in H of commutators of H's generators.
Subgroup derived_subgroup(const FiniteGroup& g, const Subgroup& h);
/// H, H', H'', ... up to and including the first repeated term.
std::vector<Subgroup> derived_series(const FiniteGroup& g, const Subgroup& h);

/// H / [H, H] in invariant-factor form.
exact::AbelianGroup abelianization(const FiniteGroup& g, const Subgroup& h);

/// {h^-1 x h : h in H}, sorted. Throws NotMember when x is not in H.
std::vector<Elem> conjugacy_class(const FiniteGroup& g, const Subgroup& h, Elem x);
/// All conjugacy classes of H, ordered by smallest member.
std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& g, const Subgroup& h);

}  // namespace branchcover::groups
