#include "branchcover/errors.hpp"
#include "branchcover/knot.hpp"

namespace branchcover::knot {

exact::IntegerMatrix coloring_matrix(const KnotDiagram& diagram) {
  const std::size_t n = diagram.crossing_count();
  exact::IntegerMatrix m(n, diagram.arc_count());
  const auto& arc = diagram.arc_of_edge();
  for (std::size_t r = 0; r < n; ++r) {
    const Crossing& c = diagram.crossings()[r];
    m(r, static_cast<std::size_t>(arc[static_cast<std::size_t>(c.over_in() - 1)])) += 2;
    m(r, static_cast<std::size_t>(arc[static_cast<std::size_t>(c.under_in() - 1)])) -= 1;
    m(r, static_cast<std::size_t>(arc[static_cast<std::size_t>(c.under_out() - 1)])) -= 1;
  }
  return m;
}

exact::AbelianGroup h1_double_cover(const KnotDiagram& diagram) {
  const std::size_t n = diagram.crossing_count();
  if (n == 0) return {};
  const auto full = coloring_matrix(diagram);
  exact::IntegerMatrix reduced(n - 1, n - 1);
  for (std::size_t r = 0; r + 1 < n; ++r)
    for (std::size_t c = 0; c + 1 < n; ++c) reduced(r, c) = full(r, c);
  return exact::smith_normal_form(reduced).cokernel;
}

std::int64_t determinant(const KnotDiagram& diagram) {
  const auto h = h1_double_cover(diagram);
  return h.is_finite() ? h.torsion_order() : 0;
}

}  // namespace branchcover::knot
