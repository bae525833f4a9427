#include <algorithm>
#include <cstdlib>

#include "branchcover/errors.hpp"
#include "branchcover/presentation.hpp"

namespace branchcover::pres {

namespace {

constexpr std::int32_t kUndefined = -1;

int column(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }

class CosetEnumerator {
 public:
  CosetEnumerator(const GroupPresentation& p, std::size_t cap) : cols_(2 * static_cast<std::size_t>(p.generators)), cap_(cap) {
    for (const auto& r : p.relators) {
      std::vector<int> cr;
      for (int letter : r) cr.push_back(column(letter));
      relators_.push_back(std::move(cr));
    }
    std::stable_sort(relators_.begin(), relators_.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    new_coset();
  }

  // Returns false when the cap is reached.
  bool run() {
    for (std::int32_t alpha = 0; alpha < static_cast<std::int32_t>(parent_.size()); ++alpha) {
      if (parent_.size() > 1024 && 2 * active_ < parent_.size()) alpha = compact(alpha);
      if (!alive(alpha)) continue;
      for (const auto& r : relators_) {
        if (!scan_and_fill(alpha, r)) return false;
        if (!alive(alpha)) break;
      }
      for (std::size_t c = 0; c < cols_ && alive(alpha); ++c) {
        if (entry(alpha, c) != kUndefined) continue;
        if (!define(alpha, c)) return false;
      }
    }
    return true;
  }

  std::vector<std::vector<groups::Elem>> regular_action() {
    compact(0);
    std::vector<std::vector<groups::Elem>> tables(cols_ / 2, std::vector<groups::Elem>(parent_.size()));
    for (std::size_t x = 0; x < parent_.size(); ++x)
      for (std::size_t g = 0; g < cols_ / 2; ++g) tables[g][x] = static_cast<groups::Elem>(entry(static_cast<std::int32_t>(x), 2 * g));
    return tables;
  }

  EnumerationStats stats;

 private:
  std::int32_t& entry(std::int32_t coset, std::size_t c) { return table_[static_cast<std::size_t>(coset) * cols_ + c]; }
  bool alive(std::int32_t c) const { return parent_[static_cast<std::size_t>(c)] == c; }

  std::int32_t new_coset() {
    const auto id = static_cast<std::int32_t>(parent_.size());
    parent_.push_back(id);
    table_.resize(table_.size() + cols_, kUndefined);
    ++active_;
    ++stats.defined;
    stats.max_active = std::max(stats.max_active, active_);
    return id;
  }

  bool define(std::int32_t alpha, std::size_t c) {
    if (active_ >= cap_) {
      lookahead();
      if (!alive(alpha) || entry(alpha, c) != kUndefined) return true;
      if (active_ >= cap_) return false;
    }
    const std::int32_t beta = new_coset();
    entry(alpha, c) = beta;
    entry(beta, c ^ 1) = alpha;
    return true;
  }

  bool scan_and_fill(std::int32_t alpha, const std::vector<int>& r) {
    while (true) {
      std::int32_t f = alpha, b = alpha;
      std::size_t i = 0, j = r.size();
      while (i < j && entry(f, static_cast<std::size_t>(r[i])) != kUndefined) f = entry(f, static_cast<std::size_t>(r[i++]));
      if (i == j) {
        if (f != alpha) coincidence(f, alpha);
        return true;
      }
      while (j > i && entry(b, static_cast<std::size_t>(r[j - 1] ^ 1)) != kUndefined)
        b = entry(b, static_cast<std::size_t>(r[--j] ^ 1));
      if (j == i) {
        coincidence(f, b);
        return true;
      }
      if (j == i + 1) {
        entry(f, static_cast<std::size_t>(r[i])) = b;
        entry(b, static_cast<std::size_t>(r[i] ^ 1)) = f;
        return true;
      }
      if (!define(f, static_cast<std::size_t>(r[i]))) return false;
      if (!alive(alpha)) return true;
    }
  }

  // Scans every relator from every live coset without defining; closes gaps of length one.
  void lookahead() {
    ++stats.lookaheads;
    for (std::int32_t beta = 0; beta < static_cast<std::int32_t>(parent_.size()); ++beta) {
      for (const auto& r : relators_) {
        if (!alive(beta)) break;
        std::int32_t f = beta, b = beta;
        std::size_t i = 0, j = r.size();
        while (i < j && entry(f, static_cast<std::size_t>(r[i])) != kUndefined) f = entry(f, static_cast<std::size_t>(r[i++]));
        if (i == j) {
          if (f != beta) coincidence(f, beta);
          continue;
        }
        while (j > i && entry(b, static_cast<std::size_t>(r[j - 1] ^ 1)) != kUndefined)
          b = entry(b, static_cast<std::size_t>(r[--j] ^ 1));
        if (j == i) coincidence(f, b);
        else if (j == i + 1) {
          entry(f, static_cast<std::size_t>(r[i])) = b;
          entry(b, static_cast<std::size_t>(r[i] ^ 1)) = f;
        }
      }
    }
  }

  std::int32_t rep(std::int32_t k) {
    std::int32_t root = k;
    while (parent_[static_cast<std::size_t>(root)] != root) root = parent_[static_cast<std::size_t>(root)];
    while (parent_[static_cast<std::size_t>(k)] != root) {
      const std::int32_t next = parent_[static_cast<std::size_t>(k)];
      parent_[static_cast<std::size_t>(k)] = root;
      k = next;
    }
    return root;
  }

  void merge(std::int32_t k, std::int32_t l) {
    std::int32_t a = rep(k), b = rep(l);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    queue_.push_back(b);
    --active_;
    ++stats.coincidences;
  }

  void coincidence(std::int32_t a, std::int32_t b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t q = 0; q < queue_.size(); ++q) {
      const std::int32_t gamma = queue_[q];
      for (std::size_t c = 0; c < cols_; ++c) {
        const std::int32_t delta = entry(gamma, c);
        if (delta == kUndefined) continue;
        if (entry(delta, c ^ 1) == gamma) entry(delta, c ^ 1) = kUndefined;
        const std::int32_t mu = rep(gamma), nu = rep(delta);
        if (entry(mu, c) != kUndefined) merge(nu, entry(mu, c));
        else if (entry(nu, c ^ 1) != kUndefined) merge(mu, entry(nu, c ^ 1));
        else {
          entry(mu, c) = nu;
          entry(nu, c ^ 1) = mu;
        }
      }
    }
  }

  // Drops dead cosets and renumbers the live ones in order. Returns the new number of `keep`,
  // or of the nearest live coset before it.
  std::int32_t compact(std::int32_t keep) {
    std::vector<std::int32_t> renum(parent_.size(), kUndefined);
    std::int32_t next = 0;
    for (std::size_t x = 0; x < parent_.size(); ++x)
      if (alive(static_cast<std::int32_t>(x))) renum[x] = next++;
    std::vector<std::int32_t> fresh(static_cast<std::size_t>(next) * cols_, kUndefined);
    for (std::size_t x = 0; x < parent_.size(); ++x) {
      if (renum[x] == kUndefined) continue;
      for (std::size_t c = 0; c < cols_; ++c) {
        const std::int32_t y = table_[x * cols_ + c];
        fresh[static_cast<std::size_t>(renum[x]) * cols_ + c] = y == kUndefined ? kUndefined : renum[static_cast<std::size_t>(y)];
      }
    }
    table_ = std::move(fresh);
    parent_.resize(static_cast<std::size_t>(next));
    for (std::int32_t x = 0; x < next; ++x) parent_[static_cast<std::size_t>(x)] = x;
    std::int32_t k = keep;
    while (renum[static_cast<std::size_t>(k)] == kUndefined) --k;
    return renum[static_cast<std::size_t>(k)];
  }

  std::size_t cols_;
  std::size_t cap_;
  std::vector<std::vector<int>> relators_;
  std::vector<std::int32_t> table_;
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> queue_;
  std::size_t active_ = 0;
};

}  // namespace

groups::Elem evaluate(const groups::FiniteGroup& action, const Word& w) {
  groups::Elem x = 0;
  for (int letter : w) {
    const auto g = static_cast<std::size_t>(std::abs(letter) - 1);
    x = letter > 0 ? action.times_generator(x, g) : action.times_generator_inverse(x, g);
  }
  return x;
}

bool certifies(const GroupPresentation& p, const groups::FiniteGroup& action) {
  if (action.generator_count() != static_cast<std::size_t>(p.generators) && p.generators != 0) return false;
  // The constructor of FiniteGroup already rejects intransitive actions.
  for (const auto& r : p.relators) {
    for (std::size_t x = 0; x < action.order(); ++x) {
      groups::Elem y = static_cast<groups::Elem>(x);
      for (int letter : r) {
        const auto g = static_cast<std::size_t>(std::abs(letter) - 1);
        y = letter > 0 ? action.times_generator(y, g) : action.times_generator_inverse(y, g);
      }
      if (y != x) return false;
    }
  }
  return true;
}

EnumerationOutcome todd_coxeter(const GroupPresentation& p, std::size_t cap) {
  if (cap < 1) throw ValidationError("coset cap must be at least 1");
  CosetEnumerator e(p, cap);
  if (!e.run()) return Inconclusive{cap, e.stats};
  auto stats = e.stats;
  groups::FiniteGroup action(e.regular_action());
  if (!certifies(p, action)) throw InternalInconsistency("closed coset table does not satisfy the relators");
  const std::size_t order = action.order();
  return Finite{order, std::move(action), stats};
}

BranchedCoverGroup branched_cover_group(const GroupPresentation& orbifold, const Finite& outcome) {
  if (orbifold.generators == 0) throw NotIndexTwo("a group without generators has no index-2 quotient");
  for (const auto& r : orbifold.relators)
    if (r.size() % 2 != 0) throw NotIndexTwo("relator of odd length: the exponent map to Z/2 is not defined");
  const auto& g = outcome.action;
  const std::size_t n = g.order();
  std::vector<int> parity(n, -1);
  parity[0] = 0;
  std::vector<groups::Elem> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const groups::Elem x = queue[head];
    for (std::size_t s = 0; s < g.generator_count(); ++s) {
      const groups::Elem y = g.times_generator(x, s);
      if (parity[y] == -1) {
        parity[y] = 1 - parity[x];
        queue.push_back(y);
      } else if (parity[y] == parity[x]) {
        throw InternalInconsistency("exponent parity is not constant on group elements");
      }
    }
  }
  // Schreier generators for the transversal {1, t} with t the first generator.
  const groups::Elem t = g.generator(0);
  const groups::Elem t_inv = g.inverse(t);
  std::vector<groups::Elem> gens;
  for (groups::Elem s : g.generators()) {
    gens.push_back(g.multiply(s, t_inv));
    gens.push_back(g.multiply(t, s));
  }
  BranchedCoverGroup out;
  out.kernel = groups::generate(g, gens);
  out.order = out.kernel.order();
  if (2 * out.order != n) throw InternalInconsistency("kernel of the exponent map does not have index 2");
  for (groups::Elem x : out.kernel.elements())
    if (parity[x] != 0) throw InternalInconsistency("kernel contains an element of odd parity");
  return out;
}

}  // namespace branchcover::pres
