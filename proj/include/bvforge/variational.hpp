#pragma once

#include <climits>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bvforge/jet.hpp"
#include "bvforge/linalg.hpp"

namespace bvforge {

/// A polynomial Lagrangian density on a jet ring (or a function in finite mode).
struct LocalAction {
  JetRingSpec ring;  // canonical
  UniversePtr universe;
  Poly lagrangian;

  /// Validates that L only involves coordinates, parameters and fields.
  static LocalAction make(const JetRingSpec& ring, const Poly& lagrangian);
  static LocalAction parse(const JetRingSpec& ring, const std::string& lagrangian);

  int field_count() const { return static_cast<int>(ring.fields.size()); }
  VarId field_id(int fiber, const MultiIndex& jet = {}) const;
};

struct EulerLagrangeSystem {
  std::vector<Poly> components;         // one per fiber variable
  std::vector<Poly> ideal_generators;   // the same list, as generators of I_S
};

/// sum_alpha (-1)^|alpha| D_alpha(d_side p / d v_alpha) over the jets of the
/// base variable v present in p's universe.
Poly variational_derivative(const Poly& p, VarId base, Side side = Side::Right);

Poly euler_lagrange(const LocalAction& s, int fiber);
EulerLagrangeSystem euler_lagrange_system(const LocalAction& s);

/// Components X_{i,alpha} keyed by (fiber, jet); an empty jet means order zero.
using VectorFieldComponents = std::map<std::pair<int, MultiIndex>, Poly>;

/// sum X_{i,alpha} * D_alpha(EL_i); in finite mode sum X_i dS/dx_i.
Poly insertion_map(const LocalAction& s, const VectorFieldComponents& x);
Poly insertion_map(const LocalAction& s, const std::vector<Poly>& x);

/// Euler-Lagrange components and their prolongations up to order k.
std::vector<Poly> el_ideal(const LocalAction& s, int prolongation_order);

struct DivergenceResult {
  bool is_divergence = false;
  std::vector<Poly> witness;  // f_i with sum D_i f_i = p - remainder
  Poly remainder;             // canonical representative modulo divergences
};

/// Reduction modulo total divergences by undetermined coefficients.
///
/// Monomials are graded by their multiset of jet families and by the total
/// derivative vector (coordinates counting negatively); D_i shifts the
/// vector by e_i, so each graded piece is an independent finite linear
/// problem. The ansatz contains every monomial of order <= witness_order
/// whose derivatives stay in the universe. The greatest monomial is the
/// pivot, which makes the remainder canonical.
class DivergenceReducer {
 public:
  explicit DivergenceReducer(UniversePtr u, int witness_order = INT_MAX);
  ~DivergenceReducer();
  DivergenceReducer(DivergenceReducer&&) noexcept;
  DivergenceReducer& operator=(DivergenceReducer&&) noexcept;

  DivergenceResult reduce(const Poly& p);
  Poly normal_form(const Poly& p) { return reduce(p).remainder; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

DivergenceResult is_total_divergence(const Poly& p, int witness_order = INT_MAX);
Poly h_normal_form(const Poly& p, int witness_order = INT_MAX);

}  // namespace bvforge
