#pragma once

// Independent reference computations used only by the test suites.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "branchcover/knot.hpp"
#include "branchcover/linalg.hpp"
#include "branchcover/presentation.hpp"
#include "branchcover/quaternion.hpp"

namespace branchcover::oracle {

/// Order of a finitely presented group by growing a truncated Cayley graph of the free group
/// breadth-first and identifying vertices whenever a relator closes up (congruence closure).
/// Returns 0 when more than `limit` vertices would be needed.
std::size_t word_enumeration_order(const pres::GroupPresentation& p, std::size_t limit = 1500000);

struct NamedPresentation {
  std::string name;
  pres::GroupPresentation presentation;
};

/// Ten presentations of groups of order at most 60.
std::vector<NamedPresentation> small_presentations();

/// Invariant factors from determinantal divisors: d_k is the gcd of all k x k minors.
std::vector<exact::BigInt> invariant_factors_by_minors(const exact::IntegerMatrix& m);

/// (q, 1) for the four unit quaternions i, j, (1+i+j+k)/2 and (i + phi j + phi^-1 k)/2.
std::vector<groups::Spin4Element> binary_icosahedral_generators();

/// Pairs of unit quaternions drawn from the binary icosahedral and binary octahedral groups and
/// the twelfth roots of unity, all lifted to one conductor.
std::vector<groups::Spin4Element> random_rotations(std::size_t count, std::mt19937_64& rng);

/// Dimension of {x : l x r^-1 = x} by floating-point elimination.
std::size_t numeric_fixed_dimension(const groups::Spin4Element& g);

/// |det| of a reduced Goeritz matrix built from the checkerboard colouring of the diagram's faces.
std::int64_t goeritz_determinant(const knot::KnotDiagram& d);

/// Abelianised Reidemeister-Schreier presentation of the kernel of the map sending every generator
/// to the generator of Z/2.
exact::AbelianGroup reidemeister_schreier_kernel_h1(const pres::GroupPresentation& p);

}  // namespace branchcover::oracle
