#include "branchcover/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "branchcover/errors.hpp"

namespace branchcover::groups {

FiniteGroup::FiniteGroup(std::vector<std::vector<Elem>> right_tables) : fwd_(std::move(right_tables)) {
  if (fwd_.empty()) {
    order_ = 1;
    inverse_ = {0};
    word_offset_ = {0, 0};
    return;
  }
  if (fwd_.size() > 0xffff) throw std::invalid_argument("too many generators");
  order_ = fwd_.front().size();
  inv_.assign(fwd_.size(), std::vector<Elem>(order_, 0));
  for (std::size_t g = 0; g < fwd_.size(); ++g) {
    const auto& t = fwd_[g];
    if (t.size() != order_) throw InternalInconsistency("generator tables have different sizes");
    std::vector<bool> hit(order_, false);
    for (std::size_t x = 0; x < order_; ++x) {
      Elem y = t[x];
      if (y >= order_ || hit[y]) throw InternalInconsistency("generator table is not a permutation");
      hit[y] = true;
      inv_[g][y] = static_cast<Elem>(x);
    }
  }

  // Breadth-first spanning tree from the identity.
  std::vector<Elem> parent(order_, 0);
  std::vector<std::uint16_t> via(order_, 0);
  std::vector<bool> seen(order_, false);
  std::vector<Elem> bfs;
  bfs.reserve(order_);
  bfs.push_back(0);
  seen[0] = true;
  for (std::size_t head = 0; head < bfs.size(); ++head) {
    Elem x = bfs[head];
    for (std::size_t g = 0; g < fwd_.size(); ++g) {
      Elem y = fwd_[g][x];
      if (seen[y]) continue;
      seen[y] = true;
      parent[y] = x;
      via[y] = static_cast<std::uint16_t>(g);
      bfs.push_back(y);
    }
  }
  if (bfs.size() != order_) throw InternalInconsistency("generators do not act transitively");

  std::vector<std::uint32_t> length(order_, 0);
  for (std::size_t i = 1; i < bfs.size(); ++i) length[bfs[i]] = length[parent[bfs[i]]] + 1;
  word_offset_.assign(order_ + 1, 0);
  for (std::size_t x = 0; x < order_; ++x) word_offset_[x + 1] = word_offset_[x] + length[x];
  word_letters_.assign(word_offset_[order_], 0);
  for (std::size_t x = 1; x < order_; ++x) {
    Elem y = static_cast<Elem>(x);
    for (std::uint32_t pos = word_offset_[x + 1]; pos-- > word_offset_[x];) {
      word_letters_[pos] = via[y];
      y = parent[y];
    }
  }

  inverse_.assign(order_, 0);
  for (std::size_t x = 0; x < order_; ++x) {
    Elem y = 0;
    auto w = word(static_cast<Elem>(x));
    for (auto it = w.rbegin(); it != w.rend(); ++it) y = inv_[*it][y];
    inverse_[x] = y;
  }
}

std::vector<Elem> FiniteGroup::generators() const {
  std::vector<Elem> out;
  out.reserve(fwd_.size());
  for (const auto& t : fwd_) out.push_back(t[0]);
  return out;
}

std::span<const std::uint16_t> FiniteGroup::word(Elem a) const {
  return {word_letters_.data() + word_offset_[a], word_offset_[a + 1] - word_offset_[a]};
}

Elem FiniteGroup::multiply(Elem a, Elem b) const {
  for (std::uint16_t g : word(b)) a = fwd_[g][a];
  return a;
}

Elem FiniteGroup::commutator(Elem a, Elem b) const {
  return multiply(multiply(inverse(a), inverse(b)), multiply(a, b));
}

Elem FiniteGroup::power(Elem a, std::int64_t n) const {
  if (n < 0) {
    a = inverse(a);
    n = -n;
  }
  Elem result = 0;
  while (n > 0) {
    if (n & 1) result = multiply(result, a);
    a = multiply(a, a);
    n >>= 1;
  }
  return result;
}

std::size_t FiniteGroup::element_order(Elem a) const {
  std::size_t n = 1;
  for (Elem x = a; x != 0; x = multiply(x, a)) ++n;
  return n;
}

Subgroup whole_group(const FiniteGroup& g) {
  auto gens = g.generators();
  return generate(g, gens);
}

Subgroup trivial_subgroup(const FiniteGroup& g) { return generate(g, {}); }

Subgroup generate(const FiniteGroup& g, std::span<const Elem> gens) {
  Subgroup h;
  h.mask_.assign(g.order(), false);
  for (Elem s : gens) {
    if (s >= g.order()) throw NotMember("generator index out of range");
    if (s != 0 && std::find(h.generators_.begin(), h.generators_.end(), s) == h.generators_.end())
      h.generators_.push_back(s);
  }
  h.mask_[0] = true;
  h.elements_.push_back(0);
  for (std::size_t head = 0; head < h.elements_.size(); ++head) {
    Elem x = h.elements_[head];
    for (Elem s : h.generators_) {
      Elem y = g.multiply(x, s);
      if (!h.mask_[y]) {
        h.mask_[y] = true;
        h.elements_.push_back(y);
      }
    }
  }
  if (g.order() % h.elements_.size() != 0)
    throw InternalInconsistency("subgroup order " + std::to_string(h.elements_.size()) + " does not divide " +
                                std::to_string(g.order()));
  std::sort(h.elements_.begin(), h.elements_.end());
  return h;
}

Subgroup normal_closure(const FiniteGroup& g, const Subgroup& ambient, std::span<const Elem> seeds) {
  for (Elem s : seeds)
    if (!ambient.contains(s)) throw NotMember("normal closure seed outside the ambient group");
  std::vector<Elem> gens(seeds.begin(), seeds.end());
  Subgroup n = generate(g, gens);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Elem> current = n.generators();
    for (Elem h : current) {
      for (Elem a : ambient.generators()) {
        Elem c = g.conjugate(h, a);
        if (n.contains(c)) continue;
        gens.push_back(c);
        n = generate(g, gens);
        grew = true;
      }
    }
  }
  return n;
}

bool is_normal(const FiniteGroup& g, const Subgroup& ambient, const Subgroup& sub) {
  for (Elem h : sub.generators())
    for (Elem a : ambient.generators())
      if (!sub.contains(g.conjugate(h, a))) return false;
  return true;
}

bool is_abelian(const FiniteGroup& g, const Subgroup& h) {
  const auto& gens = h.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (g.multiply(gens[i], gens[j]) != g.multiply(gens[j], gens[i])) return false;
  return true;
}

Subgroup derived_subgroup(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Elem> commutators;
  const auto& gens = h.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Elem c = g.commutator(gens[i], gens[j]);
      if (c != 0) commutators.push_back(c);
    }
  Subgroup d = normal_closure(g, h, commutators);
  if (!is_normal(g, h, d)) throw InternalInconsistency("derived subgroup is not normal");
  return d;
}

std::vector<Subgroup> derived_series(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Subgroup> series{h};
  while (true) {
    Subgroup next = derived_subgroup(g, series.back());
    bool stable = next.order() == series.back().order();
    series.push_back(std::move(next));
    if (stable) break;
  }
  return series;
}

exact::AbelianGroup abelianization(const FiniteGroup& g, const Subgroup& h) {
  Subgroup d = derived_subgroup(g, h);
  const std::size_t index = h.order() / d.order();

  // One representative per coset of D in H, then the order of each coset.
  std::vector<bool> covered(g.order(), false);
  std::vector<std::size_t> orders;
  for (Elem x : h.elements()) {
    if (covered[x]) continue;
    for (Elem y : d.elements()) covered[g.multiply(x, y)] = true;
    std::size_t t = 1;
    for (Elem y = x; !d.contains(y); y = g.multiply(y, x)) ++t;
    orders.push_back(t);
  }
  if (orders.size() != index) throw InternalInconsistency("coset count mismatch in abelianization");

  // For each prime p, the number of elements of order dividing p^j is p^(e_j).
  std::vector<exact::BigInt> diagonal;
  std::size_t rest = index;
  for (std::size_t p = 2; rest > 1; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    std::vector<std::size_t> exponents{0};
    for (std::size_t pj = p;; pj *= p) {
      std::size_t count = static_cast<std::size_t>(
          std::count_if(orders.begin(), orders.end(), [&](std::size_t o) { return pj % o == 0; }));
      std::size_t e = 0;
      for (std::size_t c = count; c > 1; c /= p) ++e;
      if (e == exponents.back()) break;
      exponents.push_back(e);
    }
    // at_least[j] = number of cyclic p-factors of order >= p^j
    const std::size_t top = exponents.size() - 1;
    for (std::size_t j = 1; j <= top; ++j) {
      std::size_t at_least = exponents[j] - exponents[j - 1];
      std::size_t at_least_next = j < top ? exponents[j + 1] - exponents[j] : 0;
      exact::BigInt pj = 1;
      for (std::size_t i = 0; i < j; ++i) pj *= p;
      for (std::size_t c = at_least_next; c < at_least; ++c) diagonal.push_back(pj);
    }
  }
  auto result = exact::AbelianGroup::from_diagonal(diagonal);
  if (static_cast<std::size_t>(result.torsion_order()) != index)
    throw InternalInconsistency("abelian invariants do not multiply to the quotient order");
  return result;
}

std::vector<Elem> conjugacy_class(const FiniteGroup& g, const Subgroup& h, Elem x) {
  if (!h.contains(x)) throw NotMember("element outside the group");
  std::vector<Elem> orbit{x};
  std::vector<bool> seen(g.order(), false);
  seen[x] = true;
  for (std::size_t head = 0; head < orbit.size(); ++head) {
    for (Elem a : h.generators()) {
      Elem y = g.conjugate(orbit[head], a);
      if (!seen[y]) {
        seen[y] = true;
        orbit.push_back(y);
      }
    }
  }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& g, const Subgroup& h) {
  std::vector<std::vector<Elem>> classes;
  std::vector<bool> done(g.order(), false);
  for (Elem x : h.elements()) {
    if (done[x]) continue;
    auto c = conjugacy_class(g, h, x);
    for (Elem y : c) done[y] = true;
    classes.push_back(std::move(c));
  }
  return classes;
}

}  // namespace branchcover::groups
