#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bvforge/groebner.hpp"

namespace bvforge {

struct HomologyClass {
  ModuleVector representative;  // a cycle at the requested position
  int degree = 0;               // internal degree: monomial degree plus basis weight
};

struct HomologyOptions {
  /// Cycles whose R-span replaces the kernel computation at the position.
  std::optional<std::vector<ModuleVector>> candidates;
  /// Called with every chosen representative; the returned cycles are
  /// quotiented out together with their R-multiples.
  std::function<std::vector<ModuleVector>(const ModuleVector&)> hook;
  /// Ring variables treated as invertible constants: a class killed by a
  /// power of their product is discarded.
  std::vector<VarId> invertible;
  int torsion_power = 2;
};

struct HomologyResult {
  std::vector<HomologyClass> classes;  // minimal generating set, ascending degree
  std::size_t pieces = 0;              // graded pieces examined
  std::size_t chain_dimension = 0;     // Q-dimension of the truncated chain space
};

/// Bounded-degree homology ker(d^p) / im(d^{p-1}) at `position`.
///
/// The chain spaces are graded by every integer grading making the
/// differential homogeneous (computed as a lattice), so the problem splits
/// into independent finite linear-algebra pieces. Only the variables
/// occurring in the differential enter; the others factor out. The result
/// is a module generating set: R-multiples of chosen representatives are
/// not reported again. Throws ComplexError if d o d != 0.
HomologyResult complex_homology_full(const ChainComplex& c, int position, int degree_bound,
                                     const HomologyOptions& options = {});

std::vector<HomologyClass> complex_homology(const ChainComplex& c, int position, int degree_bound,
                                            const HomologyOptions& options = {});

}  // namespace bvforge
