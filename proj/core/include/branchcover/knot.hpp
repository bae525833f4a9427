#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "branchcover/linalg.hpp"

namespace branchcover::knot {

/// One crossing in PD form: edge labels counterclockwise, starting with the incoming under-edge.
/// The under strand runs pd[0] -> pd[2]; the over strand joins pd[1] and pd[3].
struct Crossing {
  std::array<int, 4> pd{};
  /// +1 when the over strand runs pd[3] -> pd[1], -1 when it runs pd[1] -> pd[3].
  int sign = 1;

  int under_in() const noexcept { return pd[0]; }
  int under_out() const noexcept { return pd[2]; }
  int over_in() const noexcept { return sign > 0 ? pd[3] : pd[1]; }
  int over_out() const noexcept { return sign > 0 ? pd[1] : pd[3]; }
};

/// A validated one-component knot diagram. Edges are labelled 1..2n; a diagram without
/// crossings is the round unknot with a single edge.
class KnotDiagram {
 public:
  /// Validates label degrees and consecutiveness, orientation consistency and the component count,
  /// and derives crossing signs from the traversal. Throws ValidationError.
  static KnotDiagram from_pd(const std::vector<std::array<int, 4>>& tuples);
  static KnotDiagram unknot() { return KnotDiagram(); }

  const std::vector<Crossing>& crossings() const noexcept { return crossings_; }
  std::size_t crossing_count() const noexcept { return crossings_.size(); }
  /// Number of edges: 2n, or 1 without crossings.
  std::size_t edge_count() const noexcept { return crossings_.empty() ? 1 : 2 * crossings_.size(); }
  int component_count() const noexcept { return 1; }
  int writhe() const;

  /// Over-arcs: maximal strands broken only at undercrossings. `arc_of_edge()[e - 1]` is the arc
  /// (0-based) containing edge e, and there are max(n, 1) arcs.
  const std::vector<int>& arc_of_edge() const noexcept { return arc_of_edge_; }
  std::size_t arc_count() const noexcept { return crossings_.empty() ? 1 : crossings_.size(); }

  /// "[(1,4,2,5),(3,6,4,1),(5,2,6,3)]"
  std::string to_pd_string() const;

 private:
  KnotDiagram();
  std::vector<Crossing> crossings_;
  std::vector<int> arc_of_edge_;
};

struct BraidWord {
  int strands = 1;
  /// Signed generator indices in 1..strands-1.
  std::vector<int> letters;

  std::string to_string() const;
};

/// Closure of a braid. Throws NotAKnot when the closure has more than one component.
KnotDiagram braid_closure(const BraidWord& braid);

/// PD grammar: an optional outer pair of brackets around comma-separated 4-tuples, each written
/// "(a,b,c,d)" or "[a,b,c,d]" or "X[a,b,c,d]", with positive integer labels.
KnotDiagram parse_pd(std::string_view text);
/// DT grammar: whitespace- or comma-separated nonzero even integers, one per odd label 1, 3, 5, ...
/// A negative entry marks a crossing where the even-labelled passage is over.
KnotDiagram parse_dt(std::string_view text);
/// Braid grammar: "strands=n" followed by whitespace-separated nonzero integers.
BraidWord parse_braid(std::string_view text);

/// (sigma_1 ... sigma_{p-1})^q on p strands. Throws NotAKnot unless gcd(p, q) = 1; SpecViolation
/// for p < 2 or q < 2.
BraidWord torus_knot(int p, int q);

/// Numerator closure of the rational tangle p/q. Requires p odd, 0 < q < p, gcd(p, q) = 1,
/// except for the degenerate p = q = 1. Throws SpecViolation otherwise.
KnotDiagram two_bridge(std::int64_t p, std::int64_t q);

struct Fraction {
  std::int64_t beta = 0;
  std::int64_t alpha = 1;
};

/// Numerator closure of the tangle sum beta_1/alpha_1 + ... + beta_r/alpha_r plus e horizontal half-twists.
/// Throws SpecViolation for alpha < 1 or gcd(alpha, beta) != 1, NotAKnot for a link.
KnotDiagram montesinos(std::int64_t e, std::span<const Fraction> fractions);

/// |H_1| of the double branched cover, 0 when infinite.
std::int64_t determinant(const KnotDiagram& diagram);
/// H_1 of the double branched cover from the coloring matrix with one row and column removed.
exact::AbelianGroup h1_double_cover(const KnotDiagram& diagram);
/// The Fox-calculus matrix at t = -1: one row per crossing, one column per arc, entries 2, -1, -1.
exact::IntegerMatrix coloring_matrix(const KnotDiagram& diagram);

}  // namespace branchcover::knot
