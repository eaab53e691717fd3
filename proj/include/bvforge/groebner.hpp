#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "bvforge/poly.hpp"

namespace bvforge {

/// Element of a free module R^r: one Poly per basis vector.
using ModuleVector = std::vector<Poly>;

/// Module term order: degrevlex on the monomial first, then the lower
/// component index wins ("term over position").
enum class MonomialOrder { DegRevLex };

/// Matrix of polynomials R^source -> R^target, entries[row][col].
struct FreeModuleMap {
  UniversePtr universe;
  std::size_t source_rank = 0;
  std::size_t target_rank = 0;
  std::vector<std::vector<Poly>> entries;
  std::vector<int> source_weights;  // internal degree of each source basis vector
  std::vector<int> target_weights;

  static FreeModuleMap zero(UniversePtr u, std::size_t source_rank, std::size_t target_rank);
  static FreeModuleMap identity(UniversePtr u, std::size_t rank);
  /// Builds the map whose j-th column is columns[j].
  static FreeModuleMap from_columns(UniversePtr u, std::size_t target_rank, const std::vector<ModuleVector>& columns);

  const Poly& at(std::size_t row, std::size_t col) const { return entries[row][col]; }
  ModuleVector column(std::size_t col) const;
  ModuleVector apply(const ModuleVector& v) const;
  /// this o first
  FreeModuleMap after(const FreeModuleMap& first) const;
  bool is_zero() const;
};

class ComplexError : public std::runtime_error {
 public:
  ComplexError(const std::string& msg, int position) : std::runtime_error(msg), position_(position) {}
  int position() const { return position_; }

 private:
  int position_;
};

/// Cohomologically indexed complex of free modules: maps.at(p) : C^p -> C^{p+1}.
struct ChainComplex {
  UniversePtr universe;
  std::map<int, FreeModuleMap> maps;

  std::size_t rank_at(int p) const;
  std::vector<int> weights_at(int p) const;
  /// Throws ComplexError at the first position where d o d != 0.
  void check() const;
};

struct GroebnerBasis {
  UniversePtr universe;
  std::size_t rank = 1;
  std::vector<ModuleVector> elements;  // reduced, monic, descending leading terms

  /// Rank-one view as a list of polynomials.
  std::vector<Poly> polys() const;
};

/// Reduced Groebner basis of an ideal of even polynomials. Odd variables are
/// rejected with std::invalid_argument.
GroebnerBasis buchberger(const std::vector<Poly>& gens, MonomialOrder order = MonomialOrder::DegRevLex);
/// Reduced Groebner basis of a submodule of R^rank.
GroebnerBasis module_groebner(const std::vector<ModuleVector>& gens, std::size_t rank, const UniversePtr& u);

Poly normal_form(const Poly& p, const GroebnerBasis& g);
ModuleVector normal_form(const ModuleVector& v, const GroebnerBasis& g);
bool ideal_contains(const GroebnerBasis& g, const Poly& p);
bool module_contains(const GroebnerBasis& g, const ModuleVector& v);

/// Generators of {a : sum a_i gens_i = 0}, via Schreyer's construction on the
/// Buchberger trace, pruned to a minimal-by-inclusion list and normalized
/// (primitive integer content, first nonzero component with positive
/// leading coefficient).
std::vector<ModuleVector> syzygy_module(const std::vector<Poly>& gens);
std::vector<ModuleVector> module_syzygies(const std::vector<ModuleVector>& gens, std::size_t rank,
                                          const UniversePtr& u);

/// Kernel generators of f. Entries may contain odd variables; each module is
/// then expanded over the exterior monomials of the odd variables involved.
std::vector<ModuleVector> module_kernel(const FreeModuleMap& f);

/// Scales v to primitive integer content with a positive leading coefficient
/// in its first nonzero component.
ModuleVector normalize_vector(ModuleVector v);

bool is_even_poly(const Poly& p);

}  // namespace bvforge
