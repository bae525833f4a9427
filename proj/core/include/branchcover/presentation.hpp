#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "branchcover/finite_group.hpp"
#include "branchcover/knot.hpp"
#include "branchcover/linalg.hpp"

namespace branchcover::pres {

/// Letters are signed 1-based generator indices: 2 is x_2, -2 is x_2^-1.
using Word = std::vector<int>;

Word free_reduce(const Word& w);
/// Free reduction followed by cancellation of inverse letters at the two ends.
Word cyclic_reduce(const Word& w);
Word inverse(const Word& w);
std::int64_t exponent_sum(const Word& w, int generator);

struct GroupPresentation {
  int generators = 0;
  std::vector<Word> relators;

  /// Checks letter ranges, then cyclically reduces every relator and drops the empty ones.
  /// Throws ValidationError.
  static GroupPresentation make(int generators, std::vector<Word> relators);
  /// Parses "gens=n; rel= 1 2 -1 -2, 2 2". Throws ParseError or ValidationError.
  static GroupPresentation parse(std::string_view text);

  std::string to_string() const;
  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

/// One meridian per arc and one relator per crossing, with the last relator dropped.
GroupPresentation wirtinger(const knot::KnotDiagram& diagram);
/// Adds x^2 for every generator.
GroupPresentation orbifold_quotient(const GroupPresentation& p);
/// Cokernel of the relator exponent-sum matrix.
exact::AbelianGroup abelianize(const GroupPresentation& p);

inline constexpr std::size_t kDefaultCosetCap = 200000;

struct EnumerationStats {
  std::size_t defined = 0;
  std::size_t max_active = 0;
  std::size_t coincidences = 0;
  std::size_t lookaheads = 0;
};

struct Finite {
  std::size_t order = 0;
  /// Right regular action read off the closed coset table; generator i acts as x_{i+1}.
  groups::FiniteGroup action;
  EnumerationStats stats;
};

struct Inconclusive {
  std::size_t cap = 0;
  EnumerationStats stats;
};

using EnumerationOutcome = std::variant<Finite, Inconclusive>;

/// Enumerates the cosets of the trivial subgroup with the HLT strategy. When the number of active
/// cosets would exceed `cap`, a lookahead pass and compaction run first; if that frees nothing the
/// result is Inconclusive. Finite results are certified before they are returned.
EnumerationOutcome todd_coxeter(const GroupPresentation& p, std::size_t cap = kDefaultCosetCap);

/// True when `action` is transitive and every relator fixes every point.
bool certifies(const GroupPresentation& p, const groups::FiniteGroup& action);

/// Element reached from the identity by reading `w` in the regular action.
groups::Elem evaluate(const groups::FiniteGroup& action, const Word& w);

struct BranchedCoverGroup {
  std::size_t order = 0;
  /// Kernel of the mod-2 exponent-sum map inside the orbifold group.
  groups::Subgroup kernel;
};

/// Index-2 kernel of the map sending every generator to the generator of Z/2. Throws NotIndexTwo
/// when some relator has odd exponent sum or there are no generators.
BranchedCoverGroup branched_cover_group(const GroupPresentation& orbifold, const Finite& outcome);

}  // namespace branchcover::pres
