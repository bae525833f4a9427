#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "branchcover/errors.hpp"
#include "branchcover/knot.hpp"
#include "diagram_builder.hpp"

namespace branchcover::knot {

KnotDiagram::KnotDiagram() : arc_of_edge_{0} {}

KnotDiagram KnotDiagram::from_pd(const std::vector<std::array<int, 4>>& tuples) {
  KnotDiagram d;
  if (tuples.empty()) return d;
  const int n = static_cast<int>(tuples.size());
  const int edges = 2 * n;

  // Each label must appear exactly twice; occurrences[label - 1] holds (crossing, slot) pairs.
  std::vector<std::vector<std::pair<int, int>>> occurrences(static_cast<std::size_t>(edges));
  for (int c = 0; c < n; ++c)
    for (int s = 0; s < 4; ++s) {
      int label = tuples[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)];
      if (label < 1 || label > edges)
        throw ValidationError("edge label " + std::to_string(label) + " outside 1.." + std::to_string(edges));
      occurrences[static_cast<std::size_t>(label - 1)].emplace_back(c, s);
    }
  for (int e = 0; e < edges; ++e)
    if (occurrences[static_cast<std::size_t>(e)].size() != 2)
      throw ValidationError("edge label " + std::to_string(e + 1) + " occurs " +
                            std::to_string(occurrences[static_cast<std::size_t>(e)].size()) + " times");

  // Traverse from the under-in slot of the first crossing; strands go straight through (s -> s+2).
  std::vector<int> over_entry(static_cast<std::size_t>(n), -1);
  std::vector<int> visits(static_cast<std::size_t>(n), 0);
  int c = 0, s = 0, steps = 0;
  do {
    if (s == 2) throw ValidationError("orientation conflict at crossing " + std::to_string(c + 1));
    if (s % 2 == 1) over_entry[static_cast<std::size_t>(c)] = s;
    ++visits[static_cast<std::size_t>(c)];
    const int exit = (s + 2) % 4;
    const int label = tuples[static_cast<std::size_t>(c)][static_cast<std::size_t>(exit)];
    const auto& occ = occurrences[static_cast<std::size_t>(label - 1)];
    const auto next = occ[0] == std::make_pair(c, exit) ? occ[1] : occ[0];
    c = next.first;
    s = next.second;
    ++steps;
  } while (!(c == 0 && s == 0) && steps <= edges);
  if (steps < edges)
    throw ValidationError("diagram has more than one component (traversal covers " + std::to_string(steps) +
                          " of " + std::to_string(edges) + " edges)");
  if (steps > edges) throw ValidationError("traversal does not close up");
  for (int x = 0; x < n; ++x)
    if (visits[static_cast<std::size_t>(x)] != 2 || over_entry[static_cast<std::size_t>(x)] < 0)
      throw ValidationError("crossing " + std::to_string(x + 1) + " is not traversed once over and once under");

  for (int x = 0; x < n; ++x) {
    Crossing cr;
    cr.pd = tuples[static_cast<std::size_t>(x)];
    cr.sign = over_entry[static_cast<std::size_t>(x)] == 3 ? 1 : -1;
    d.crossings_.push_back(cr);
  }

  // Over-arcs: edges glued across the over strand of each crossing.
  std::vector<int> parent(static_cast<std::size_t>(edges));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& cr : d.crossings_) parent[static_cast<std::size_t>(find(cr.pd[1] - 1))] = find(cr.pd[3] - 1);
  std::map<int, int> arc_id;
  d.arc_of_edge_.assign(static_cast<std::size_t>(edges), 0);
  for (int e = 0; e < edges; ++e) {
    auto [it, inserted] = arc_id.try_emplace(find(e), static_cast<int>(arc_id.size()));
    d.arc_of_edge_[static_cast<std::size_t>(e)] = it->second;
  }
  if (static_cast<int>(arc_id.size()) != n)
    throw InternalInconsistency("expected " + std::to_string(n) + " arcs, found " + std::to_string(arc_id.size()));
  return d;
}

int KnotDiagram::writhe() const {
  int w = 0;
  for (const auto& c : crossings_) w += c.sign;
  return w;
}

std::string KnotDiagram::to_pd_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < crossings_.size(); ++i) {
    const auto& p = crossings_[i].pd;
    out << (i ? "," : "") << "(" << p[0] << "," << p[1] << "," << p[2] << "," << p[3] << ")";
  }
  out << "]";
  return out.str();
}

std::string BraidWord::to_string() const {
  std::ostringstream out;
  out << "strands=" << strands;
  for (int l : letters) out << " " << l;
  return out.str();
}

namespace detail {

int DiagramBuilder::new_port() {
  parent_.push_back(static_cast<int>(parent_.size()));
  return parent_.back();
}

std::array<int, 4> DiagramBuilder::add_crossing(int under_parity) {
  std::array<int, 4> ports{new_port(), new_port(), new_port(), new_port()};
  ports_.push_back(ports);
  under_parity_.push_back(under_parity & 1);
  return ports;
}

int DiagramBuilder::find(int port) const {
  while (parent_[static_cast<std::size_t>(port)] != port) {
    parent_[static_cast<std::size_t>(port)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(port)])];
    port = parent_[static_cast<std::size_t>(port)];
  }
  return port;
}

void DiagramBuilder::join(int a, int b) {
  a = find(a);
  b = find(b);
  if (a != b) parent_[static_cast<std::size_t>(a)] = b;
}

std::vector<std::vector<DiagramBuilder::Slot>> DiagramBuilder::slots_by_class() const {
  std::vector<std::vector<Slot>> out(parent_.size());
  for (std::size_t c = 0; c < ports_.size(); ++c)
    for (int s = 0; s < 4; ++s)
      out[static_cast<std::size_t>(find(ports_[c][static_cast<std::size_t>(s)]))].push_back(
          {static_cast<int>(c), s});
  for (const auto& v : out)
    if (!v.empty() && v.size() != 2) throw InternalInconsistency("diagram edge with a dangling end");
  return out;
}

int DiagramBuilder::component_count() const {
  const auto classes = slots_by_class();
  int components = 0;
  for (std::size_t p = 0; p < parent_.size(); ++p)
    if (find(static_cast<int>(p)) == static_cast<int>(p) && classes[p].empty()) ++components;

  std::vector<std::array<bool, 4>> seen(ports_.size(), {false, false, false, false});
  for (std::size_t c0 = 0; c0 < ports_.size(); ++c0)
    for (int s0 = 0; s0 < 4; ++s0) {
      if (seen[c0][static_cast<std::size_t>(s0)]) continue;
      ++components;
      int c = static_cast<int>(c0), s = s0;
      while (!seen[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)]) {
        const int exit = (s + 2) % 4;
        seen[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)] = true;
        seen[static_cast<std::size_t>(c)][static_cast<std::size_t>(exit)] = true;
        const auto& cls = classes[static_cast<std::size_t>(find(ports_[static_cast<std::size_t>(c)][static_cast<std::size_t>(exit)]))];
        const Slot next = (cls[0].crossing == c && cls[0].position == exit) ? cls[1] : cls[0];
        c = next.crossing;
        s = next.position;
      }
    }
  return components;
}

KnotDiagram DiagramBuilder::finish() const {
  const int components = component_count();
  if (components != 1) throw NotAKnot("closure has " + std::to_string(components) + " components");
  if (ports_.empty()) return KnotDiagram::unknot();

  const auto classes = slots_by_class();
  const std::size_t n = ports_.size();
  std::vector<int> label(parent_.size(), 0);
  std::vector<int> under_entry(n, -1);
  int next_label = 1;
  int c = 0, s = 0;
  do {
    if (s % 2 == under_parity_[static_cast<std::size_t>(c)]) under_entry[static_cast<std::size_t>(c)] = s;
    const int exit = (s + 2) % 4;
    const int cls_id = find(ports_[static_cast<std::size_t>(c)][static_cast<std::size_t>(exit)]);
    label[static_cast<std::size_t>(cls_id)] = next_label++;
    const auto& cls = classes[static_cast<std::size_t>(cls_id)];
    const Slot next = (cls[0].crossing == c && cls[0].position == exit) ? cls[1] : cls[0];
    c = next.crossing;
    s = next.position;
  } while (!(c == 0 && s == 0));

  std::vector<std::array<int, 4>> tuples(n);
  for (std::size_t x = 0; x < n; ++x) {
    const int u = under_entry[x];
    for (int k = 0; k < 4; ++k)
      tuples[x][static_cast<std::size_t>(k)] = label[static_cast<std::size_t>(find(ports_[x][static_cast<std::size_t>((u + k) % 4)]))];
  }
  return KnotDiagram::from_pd(tuples);
}

Tangle zero_tangle(DiagramBuilder& b) {
  const int top = b.new_port(), bottom = b.new_port();
  return {top, top, bottom, bottom};
}

Tangle infinity_tangle(DiagramBuilder& b) {
  const int left = b.new_port(), right = b.new_port();
  return {left, right, left, right};
}

namespace {
enum Pos { NW = 0, SW = 1, SE = 2, NE = 3 };
// A positive twist puts the NW-SE strand over, i.e. the under strand on SW-NE.
int parity_for(int sign) { return sign > 0 ? 1 : 0; }
}  // namespace

Tangle twist_horizontal(DiagramBuilder& b, const Tangle& t, int sign) {
  auto x = b.add_crossing(parity_for(sign));
  b.join(x[NW], t.ne);
  b.join(x[SW], t.se);
  return {t.nw, x[NE], t.sw, x[SE]};
}

Tangle twist_vertical(DiagramBuilder& b, const Tangle& t, int sign) {
  auto x = b.add_crossing(parity_for(sign));
  b.join(x[NW], t.sw);
  b.join(x[NE], t.se);
  return {t.nw, t.ne, x[SW], x[SE]};
}

Tangle tangle_sum(DiagramBuilder& b, const Tangle& left, const Tangle& right) {
  b.join(left.ne, right.nw);
  b.join(left.se, right.sw);
  return {left.nw, right.ne, left.sw, right.se};
}

Tangle rational_tangle(DiagramBuilder& b, std::int64_t num, std::int64_t den) {
  if (den < 0 || std::gcd(num, den) != 1) throw SpecViolation("tangle fraction must be reduced with den >= 0");
  // Peel twists off the fraction, then rebuild from the base tangle.
  enum class Op { HorizontalPlus, HorizontalMinus, VerticalPlus, VerticalMinus };
  std::vector<Op> ops;
  while (den != 0 && num != 0) {
    if (num >= den) {
      ops.push_back(Op::HorizontalPlus);
      num -= den;
    } else if (num > 0) {
      ops.push_back(Op::VerticalPlus);
      den -= num;
    } else if (num <= -den) {
      ops.push_back(Op::HorizontalMinus);
      num += den;
    } else {
      ops.push_back(Op::VerticalMinus);
      den += num;
    }
  }
  Tangle t = den == 0 ? infinity_tangle(b) : zero_tangle(b);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    switch (*it) {
      case Op::HorizontalPlus: t = twist_horizontal(b, t, 1); break;
      case Op::HorizontalMinus: t = twist_horizontal(b, t, -1); break;
      case Op::VerticalPlus: t = twist_vertical(b, t, 1); break;
      case Op::VerticalMinus: t = twist_vertical(b, t, -1); break;
    }
  }
  return t;
}

void numerator_closure(DiagramBuilder& b, const Tangle& t) {
  b.join(t.nw, t.ne);
  b.join(t.sw, t.se);
}

}  // namespace detail

}  // namespace branchcover::knot
