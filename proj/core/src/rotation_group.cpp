#include "branchcover/rotation_group.hpp"

#include <numeric>

#include "branchcover/errors.hpp"

namespace branchcover::groups {

Spin4Element FiniteRotationGroup::canonical(const Spin4Element& g) const {
  Spin4Element lifted = g.lifted_to(std::lcm(left_conductor_, g.left.value().conductor()),
                                    std::lcm(right_conductor_, g.right.value().conductor()));
  if (lifted.left.value().conductor() != left_conductor_ || lifted.right.value().conductor() != right_conductor_)
    return lifted;  // not representable in this field, hence not a member
  if (ambient_ == Ambient::SO4) return RotationClass(lifted).representative();
  return lifted;
}

std::optional<Elem> FiniteRotationGroup::find(const Spin4Element& g) const {
  auto it = index_.find(canonical(g));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Elem FiniteRotationGroup::index_of(const Spin4Element& g) const {
  if (auto x = find(g)) return *x;
  throw NotMember("element " + g.to_string() + " is not in the group");
}

FiniteRotationGroup generate_group(Ambient ambient, std::span<const Spin4Element> gens, std::size_t cap) {
  if (cap < 1) throw std::invalid_argument("group cap must be at least 1");
  FiniteRotationGroup out;
  out.ambient_ = ambient;
  for (const auto& s : gens) {
    out.left_conductor_ = std::lcm(out.left_conductor_, s.left.value().conductor());
    out.right_conductor_ = std::lcm(out.right_conductor_, s.right.value().conductor());
  }
  for (const auto& s : gens) out.generators_.push_back(out.canonical(s));

  out.elements_.push_back(out.canonical(Spin4Element::identity()));
  out.index_.emplace(out.elements_.front(), 0);
  std::vector<std::vector<Elem>> tables(out.generators_.size());
  for (std::size_t head = 0; head < out.elements_.size(); ++head) {
    for (std::size_t g = 0; g < out.generators_.size(); ++g) {
      Spin4Element y = out.elements_[head] * out.generators_[g];
      if (ambient == Ambient::SO4) y = RotationClass(y).representative();
      auto [it, inserted] = out.index_.try_emplace(y, static_cast<Elem>(out.elements_.size()));
      if (inserted) {
        if (out.elements_.size() >= cap) throw CapExceeded(cap);
        out.elements_.push_back(std::move(y));
      }
      tables[g].push_back(it->second);
    }
  }
  out.engine_ = FiniteGroup(std::move(tables));
  if (out.engine_.order() != out.elements_.size() && !out.generators_.empty())
    throw InternalInconsistency("Cayley table size mismatch");
  return out;
}

std::vector<Spin4Element> conjugacy_class(const FiniteRotationGroup& g, const Spin4Element& x) {
  const auto& e = g.engine();
  std::vector<Spin4Element> out;
  for (Elem y : conjugacy_class(e, whole_group(e), g.index_of(x))) out.push_back(g.element(y));
  return out;
}

Subgroup normal_closure(const FiniteRotationGroup& g, std::span<const Spin4Element> seeds) {
  std::vector<Elem> idx;
  for (const auto& s : seeds) idx.push_back(g.index_of(s));
  return normal_closure(g.engine(), whole_group(g.engine()), idx);
}

std::vector<Subgroup> derived_series(const FiniteRotationGroup& g) {
  return derived_series(g.engine(), whole_group(g.engine()));
}

exact::AbelianGroup abelianization(const FiniteRotationGroup& g) {
  return abelianization(g.engine(), whole_group(g.engine()));
}

FreenessResult acts_freely(const FiniteRotationGroup& g) {
  if (g.ambient() != Ambient::SO4) throw WrongAmbient("free-action test needs an SO(4) group");
  FreenessResult out;
  for (std::size_t x = 1; x < g.order(); ++x) {
    if (has_fixed_point(g.elements()[x])) {
      out.free = false;
      out.witness = g.elements()[x];
      break;
    }
  }
  return out;
}

IntersectionOrders subgroup_intersections(const FiniteRotationGroup& g) {
  if (g.ambient() != Ambient::Spin4) throw WrongAmbient("intersections are taken at the Spin(4) level");
  IntersectionOrders out{0, 0, 0};
  for (const auto& x : g.elements()) {
    if (!x.right.value().is_complex()) throw WrongAmbient("right factor " + x.right.value().to_string() +
                                                          " is outside the complex circle");
    const bool right_trivial = x.right.value() == Quaternion::one();
    const bool left_trivial = x.left.value() == Quaternion::one();
    if (right_trivial) ++out.with_left_factor;
    if (left_trivial) ++out.with_right_factor;
  }
  out.gcd = std::gcd(out.with_left_factor, out.with_right_factor);
  return out;
}

}  // namespace branchcover::groups
