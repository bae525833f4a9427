#include <numeric>

#include "branchcover/errors.hpp"
#include "branchcover/knot.hpp"
#include "diagram_builder.hpp"

namespace branchcover::knot {

KnotDiagram braid_closure(const BraidWord& braid) {
  if (braid.strands < 1) throw ValidationError("a braid needs at least one strand");
  detail::DiagramBuilder b;
  std::vector<int> bottom, current;
  for (int s = 0; s < braid.strands; ++s) {
    bottom.push_back(b.new_port());
    current.push_back(bottom.back());
  }
  for (int letter : braid.letters) {
    const int i = std::abs(letter) - 1;
    if (letter == 0 || i + 1 >= braid.strands) throw ValidationError("braid generator out of range");
    // Strands run upwards. A positive letter puts the SW-NE strand over, so NW-SE is under.
    auto x = b.add_crossing(letter > 0 ? 0 : 1);
    b.join(x[1], current[static_cast<std::size_t>(i)]);
    b.join(x[2], current[static_cast<std::size_t>(i + 1)]);
    current[static_cast<std::size_t>(i)] = x[0];
    current[static_cast<std::size_t>(i + 1)] = x[3];
  }
  for (int s = 0; s < braid.strands; ++s)
    b.join(current[static_cast<std::size_t>(s)], bottom[static_cast<std::size_t>(s)]);
  return b.finish();
}

BraidWord torus_knot(int p, int q) {
  if (p < 2 || q < 2) throw SpecViolation("torus knot parameters must be at least 2");
  if (std::gcd(p, q) != 1)
    throw NotAKnot("T(" + std::to_string(p) + "," + std::to_string(q) + ") is a " + std::to_string(std::gcd(p, q)) +
                   "-component link");
  BraidWord w;
  w.strands = p;
  for (int r = 0; r < q; ++r)
    for (int i = 1; i < p; ++i) w.letters.push_back(i);
  return w;
}

KnotDiagram two_bridge(std::int64_t p, std::int64_t q) {
  const bool degenerate = p == 1 && q == 1;
  if (!degenerate && (p < 1 || p % 2 == 0 || q <= 0 || q >= p || std::gcd(p, q) != 1))
    throw SpecViolation("two-bridge parameters need p odd, 0 < q < p and gcd(p, q) = 1");
  detail::DiagramBuilder b;
  auto t = detail::rational_tangle(b, p, q);
  detail::numerator_closure(b, t);
  return b.finish();
}

KnotDiagram montesinos(std::int64_t e, std::span<const Fraction> fractions) {
  for (const auto& f : fractions)
    if (f.alpha < 1 || std::gcd(f.alpha, f.beta) != 1)
      throw SpecViolation("Montesinos fractions need alpha >= 1 and gcd(alpha, beta) = 1");
  detail::DiagramBuilder b;
  detail::Tangle t = detail::zero_tangle(b);
  for (const auto& f : fractions) t = detail::tangle_sum(b, t, detail::rational_tangle(b, f.beta, f.alpha));
  for (std::int64_t k = 0; k < std::abs(e); ++k) t = detail::twist_horizontal(b, t, e > 0 ? 1 : -1);
  detail::numerator_closure(b, t);
  return b.finish();
}

}  // namespace branchcover::knot
