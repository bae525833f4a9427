#include "oracles.hpp"

#include "branchcover/rotation_group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace branchcover::oracle {

using exact::BigInt;

namespace {

// Fraction-free elimination; the last pivot is the determinant.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    out.push_back(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  std::size_t parent(std::size_t x) const { return parent_[x]; }

  void link(std::size_t root, std::size_t child) { parent_[child] = root; }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::size_t word_enumeration_order(const pres::GroupPresentation& p, std::size_t limit) {
  const int letters = 2 * p.generators;
  if (letters == 0) return 1;
  auto letter_of = [](int x) { return x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1; };

  // Ball of reduced words, grown one full radius at a time.
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent{none};
  std::vector<int> last{-1};
  std::vector<int> length{0};
  std::vector<std::vector<std::size_t>> child{std::vector<std::size_t>(letters, none)};
  std::size_t layer_begin = 0;
  int radius = 0;
  while (true) {
    const std::size_t layer_end = parent.size();
    std::size_t next = 0;
    for (std::size_t w = layer_begin; w < layer_end; ++w) next += last[w] < 0 ? letters : letters - 1;
    if (layer_end + next > limit) break;
    for (std::size_t w = layer_begin; w < layer_end; ++w)
      for (int a = 0; a < letters; ++a) {
        if (last[w] >= 0 && a == (last[w] ^ 1)) continue;
        child[w][a] = parent.size();
        parent.push_back(w);
        last.push_back(a);
        length.push_back(radius + 1);
        child.emplace_back(letters, none);
      }
    layer_begin = layer_end;
    ++radius;
  }
  const std::size_t n = parent.size();
  auto step = [&](std::size_t w, int a) -> std::size_t {
    if (last[w] >= 0 && a == (last[w] ^ 1)) return parent[w];
    return child[w][a];
  };

  UnionFind uf(n);
  std::vector<std::vector<std::size_t>> succ = child;
  for (std::size_t w = 1; w < n; ++w) succ[w][last[w] ^ 1] = parent[w];
  std::vector<std::pair<std::size_t, std::size_t>> pending;
  auto drain = [&] {
    while (!pending.empty()) {
      auto [x, y] = pending.back();
      pending.pop_back();
      x = uf.find(x);
      y = uf.find(y);
      if (x == y) continue;
      if (y < x) std::swap(x, y);
      uf.link(x, y);
      for (int a = 0; a < letters; ++a) {
        if (succ[y][a] == none) continue;
        if (succ[x][a] == none) succ[x][a] = succ[y][a];
        else pending.emplace_back(succ[x][a], succ[y][a]);
      }
    }
  };

  std::vector<std::vector<int>> loops;
  for (const auto& r : p.relators) {
    std::vector<int> fwd, back;
    for (int x : r) fwd.push_back(letter_of(x));
    for (auto it = r.rbegin(); it != r.rend(); ++it) back.push_back(letter_of(-*it));
    loops.push_back(fwd);
    loops.push_back(back);
  }
  for (std::size_t w = 0; w < n; ++w)
    for (const auto& loop : loops) {
      std::size_t at = w;
      for (int a : loop) {
        at = step(at, a);
        if (at == none) break;
      }
      if (at != none) pending.emplace_back(w, at);
      drain();
    }

  // Count classes reached within each radius; the group is the stable count.
  std::vector<std::size_t> first_radius(n, none);
  std::vector<std::size_t> new_at(radius + 1, 0);
  for (std::size_t w = 0; w < n; ++w) {
    const std::size_t c = uf.find(w);
    if (first_radius[c] == none) {
      first_radius[c] = length[w];
      ++new_at[length[w]];
    }
  }
  std::size_t count = 0;
  for (int r = 0; r + 1 < radius; ++r) {
    count += new_at[r];
    if (new_at[r + 1] == 0) return count;
  }
  return 0;
}

std::vector<NamedPresentation> small_presentations() {
  auto make = [](std::string name, int gens, std::vector<pres::Word> rels) {
    return NamedPresentation{std::move(name), pres::GroupPresentation::make(gens, std::move(rels))};
  };
  return {
      make("C5", 1, {{1, 1, 1, 1, 1}}),
      make("D3", 2, {{1, 1, 1}, {2, 2}, {1, 2, 1, 2}}),
      make("Q8", 2, {{1, 1, 1, 1}, {1, 1, -2, -2}, {-2, 1, 2, 1}}),
      make("D5", 2, {{1, 1, 1, 1, 1}, {2, 2}, {1, 2, 1, 2}}),
      make("A4", 2, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2, 1, 2}}),
      make("Dic3", 2, {{1, 1, 1, 1, 1, 1}, {1, 1, 1, -2, -2}, {-2, 1, 2, 1}}),
      make("C3xC4", 2, {{1, 1, 1}, {2, 2, 2, 2}, {1, 2, -1, -2}}),
      make("2T", 2, {{1, 2, 1, 2, -1, -1, -1}, {1, 1, 1, -2, -2, -2}}),
      make("S4", 2, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2, 1, 2, 1, 2}}),
      make("A5", 2, {{1, 1}, {2, 2, 2}, {1, 2, 1, 2, 1, 2, 1, 2, 1, 2}}),
  };
}

std::vector<BigInt> invariant_factors_by_minors(const exact::IntegerMatrix& m) {
  const std::size_t k_max = std::min(m.rows(), m.cols());
  std::vector<BigInt> out;
  BigInt previous = 1;
  for (std::size_t k = 1; k <= k_max; ++k) {
    std::vector<std::vector<std::size_t>> rows, cols;
    subsets(m.rows(), k, rows);
    subsets(m.cols(), k, cols);
    BigInt d = 0;
    for (const auto& rs : rows)
      for (const auto& cs : cols) {
        std::vector<std::vector<BigInt>> minor(k, std::vector<BigInt>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) minor[i][j] = m(rs[i], cs[j]);
        d = gcd(d, abs(bareiss_determinant(std::move(minor))));
      }
    if (d == 0) break;
    out.push_back(d / previous);
    previous = d;
  }
  return out;
}

std::vector<groups::Spin4Element> binary_icosahedral_generators() {
  using exact::ExactScalar;
  using groups::Quaternion;
  auto left = [](Quaternion q) { return groups::Spin4Element{groups::UnitQuaternion(std::move(q)), {}}; };
  const auto half = ExactScalar::from_rational(1, 2);
  const auto phi = ExactScalar::golden_ratio();
  return {left(Quaternion::i()), left(Quaternion::j()), left(Quaternion(half, half, half, half)),
          left(Quaternion(ExactScalar(0), half, half * phi, half * (phi - ExactScalar(1))))};
}

std::vector<groups::Spin4Element> random_rotations(std::size_t count, std::mt19937_64& rng) {
  using exact::ExactScalar;
  using groups::Quaternion;
  static const std::vector<groups::UnitQuaternion> pool = [] {
    std::vector<groups::UnitQuaternion> out;
    const auto ico = binary_icosahedral_generators();
    const auto icosahedral = groups::generate_group(groups::Ambient::Spin4, ico);
    for (const auto& x : icosahedral.elements()) out.push_back(x.left);
    const auto half = ExactScalar::from_rational(1, 2);
    const groups::Spin4Element octa[] = {{groups::UnitQuaternion(Quaternion::exp_i(1, 8)), {}},
                                         {groups::UnitQuaternion(Quaternion::j()), {}},
                                         {groups::UnitQuaternion(Quaternion(half, half, half, half)), {}}};
    const auto octahedral = groups::generate_group(groups::Ambient::Spin4, octa);
    for (const auto& x : octahedral.elements()) out.push_back(x.left);
    for (int a = 0; a < 12; ++a) out.emplace_back(Quaternion::exp_i(a, 12));
    int conductor = 1;
    for (const auto& q : out) conductor = std::lcm(conductor, q.value().conductor());
    for (auto& q : out) q = q.lifted_to(conductor);
    return out;
  }();
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::vector<groups::Spin4Element> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back({pool[pick(rng)], pool[pick(rng)]});
  return out;
}

std::size_t numeric_fixed_dimension(const groups::Spin4Element& g) {
  const groups::Quaternion basis[4] = {groups::Quaternion::one(), groups::Quaternion::i(), groups::Quaternion::j(),
                                       groups::Quaternion::k()};
  double a[4][4];
  for (int c = 0; c < 4; ++c) {
    const auto image = g.apply(basis[c]).to_doubles();
    for (int r = 0; r < 4; ++r) a[r][c] = image[r] - (r == c ? 1.0 : 0.0);
  }
  std::size_t rank = 0;
  for (int c = 0; c < 4 && rank < 4; ++c) {
    int pivot = static_cast<int>(rank);
    for (int r = pivot + 1; r < 4; ++r)
      if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
    if (std::abs(a[pivot][c]) < 1e-9) continue;
    std::swap(a[pivot], a[rank]);
    for (int r = static_cast<int>(rank) + 1; r < 4; ++r) {
      const double f = a[r][c] / a[rank][c];
      for (int j = c; j < 4; ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return 4 - rank;
}

std::int64_t goeritz_determinant(const knot::KnotDiagram& d) {
  const auto& xs = d.crossings();
  const std::size_t n = xs.size();
  if (n == 0) return 1;

  // Corner (c, i) is the sector between rays pd[i] and pd[i+1] at crossing c.
  std::map<int, std::vector<std::pair<std::size_t, int>>> ends;
  for (std::size_t c = 0; c < n; ++c)
    for (int i = 0; i < 4; ++i) ends[xs[c].pd[i]].emplace_back(c, i);
  std::vector<int> face(4 * n, -1);
  int faces = 0;
  for (std::size_t start = 0; start < 4 * n; ++start) {
    if (face[start] >= 0) continue;
    std::size_t corner = start;
    while (face[corner] < 0) {
      face[corner] = faces;
      const std::size_t c = corner / 4;
      const int out = (static_cast<int>(corner % 4) + 1) % 4;
      const auto& both = ends.at(xs[c].pd[out]);
      const auto& other = both[0] == std::make_pair(c, out) ? both[1] : both[0];
      corner = 4 * other.first + static_cast<std::size_t>(other.second);
    }
    ++faces;
  }

  // Two-colour the faces: corners 0 and 2 of a crossing share a colour, 1 and 3 take the other.
  std::vector<int> colour(faces, -1);
  colour[face[0]] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t c = 0; c < n; ++c)
      for (int i = 0; i < 4; ++i) {
        const int f = face[4 * c + i];
        if (colour[f] < 0) continue;
        for (int j = 0; j < 4; ++j) {
          const int g = face[4 * c + j];
          const int want = colour[f] ^ ((i ^ j) & 1);
          if (colour[g] < 0) {
            colour[g] = want;
            changed = true;
          } else if (colour[g] != want) {
            throw std::logic_error("faces are not two-colourable");
          }
        }
      }
  }

  std::vector<int> white_index(faces, -1);
  int whites = 0;
  for (int f = 0; f < faces; ++f)
    if (colour[f] == 0) white_index[f] = whites++;
  std::vector<std::vector<BigInt>> g(whites, std::vector<BigInt>(whites, 0));
  for (std::size_t c = 0; c < n; ++c) {
    const bool even_white = colour[face[4 * c]] == 0;
    const int eta = even_white ? 1 : -1;
    const int a = white_index[face[4 * c + (even_white ? 0 : 1)]];
    const int b = white_index[face[4 * c + (even_white ? 2 : 3)]];
    if (a == b) continue;
    g[a][b] -= eta;
    g[b][a] -= eta;
    g[a][a] += eta;
    g[b][b] += eta;
  }
  std::vector<std::vector<BigInt>> reduced(whites - 1, std::vector<BigInt>(whites - 1));
  for (int i = 1; i < whites; ++i)
    for (int j = 1; j < whites; ++j) reduced[i - 1][j - 1] = g[i][j];
  return abs(bareiss_determinant(std::move(reduced))).convert_to<std::int64_t>();
}

exact::AbelianGroup reidemeister_schreier_kernel_h1(const pres::GroupPresentation& p) {
  const int n = p.generators;
  if (n == 0) throw std::invalid_argument("no generators");
  // Schreier generator y(s, x) = rep(s) x rep(s x)^-1 with transversal {1, x_1}; column s * n + (x - 1).
  auto column = [n](int coset, int x) { return static_cast<std::size_t>(coset * n + x - 1); };
  std::vector<std::vector<BigInt>> rows;
  std::vector<BigInt> trivial(2 * n, 0);
  trivial[column(0, 1)] = 1;
  rows.push_back(trivial);
  for (const auto& r : p.relators) {
    if (r.size() % 2) throw std::invalid_argument("relator of odd length");
    for (int start = 0; start < 2; ++start) {
      std::vector<BigInt> row(2 * n, 0);
      int coset = start;
      for (int x : r) {
        if (x > 0) {
          row[column(coset, x)] += 1;
          coset ^= 1;
        } else {
          coset ^= 1;
          row[column(coset, -x)] -= 1;
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return exact::smith_normal_form(exact::IntegerMatrix::from_rows(rows)).cokernel;
}

}  // namespace branchcover::oracle
