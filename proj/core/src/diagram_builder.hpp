#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "branchcover/knot.hpp"

namespace branchcover::knot::detail {

/// Unoriented diagram assembly. Each crossing owns four ports, listed counterclockwise
/// as NW, SW, SE, NE; ports are glued with `join` and the result is oriented by traversal.
class DiagramBuilder {
 public:
  int new_port();
  /// `under_parity` 0 puts the under strand on NW-SE, 1 on SW-NE.
  std::array<int, 4> add_crossing(int under_parity);
  void join(int a, int b);

  /// Closed curves in the assembled diagram, counting crossingless loops.
  int component_count() const;
  /// Throws NotAKnot unless exactly one component remains.
  KnotDiagram finish() const;

 private:
  struct Slot {
    int crossing;
    int position;
  };
  int find(int port) const;
  std::vector<std::vector<Slot>> slots_by_class() const;

  mutable std::vector<int> parent_;
  std::vector<std::array<int, 4>> ports_;
  std::vector<int> under_parity_;
};

/// Ports of a four-ended tangle.
struct Tangle {
  int nw, ne, sw, se;
};

Tangle zero_tangle(DiagramBuilder& b);
Tangle infinity_tangle(DiagramBuilder& b);
/// Adds one crossing on the right: fraction F -> F + sign.
Tangle twist_horizontal(DiagramBuilder& b, const Tangle& t, int sign);
/// Adds one crossing at the bottom: fraction F -> F / (1 + sign F).
Tangle twist_vertical(DiagramBuilder& b, const Tangle& t, int sign);
Tangle tangle_sum(DiagramBuilder& b, const Tangle& left, const Tangle& right);
/// Rational tangle with fraction num/den (den >= 0, gcd 1; den = 0 is the infinity tangle).
Tangle rational_tangle(DiagramBuilder& b, std::int64_t num, std::int64_t den);
void numerator_closure(DiagramBuilder& b, const Tangle& t);

}  // namespace branchcover::knot::detail
