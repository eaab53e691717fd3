#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bvforge/poly.hpp"

namespace bvforge {

struct FiberVariable {
  std::string name;
  int intrinsic_parity = 0;
  bool operator==(const FiberVariable&) const = default;
};

/// Differential polynomial ring R[t, x_alpha] truncated at max_jet_order.
/// base_dim = 0 is the finite-dimensional mode (no coordinates, no jets).
struct JetRingSpec {
  int base_dim = 0;
  std::vector<FiberVariable> fields;
  std::vector<std::string> parameters;
  std::vector<std::string> coordinates;  // defaults to t or t1..tn
  int max_jet_order = 0;

  bool finite_mode() const { return base_dim == 0; }
  /// Sorts fields and parameters by name and fills default coordinate names.
  /// Fiber indices are positions in the sorted field list.
  JetRingSpec canonical() const;
  int fiber_index(const std::string& field) const;  // -1 if absent
};

/// Raised when an operation would leave the truncated jet window.
class JetOverflowError : public std::runtime_error {
 public:
  JetOverflowError(const std::string& var, const std::string& what)
      : std::runtime_error(what), variable_(var) {}
  const std::string& variable() const { return variable_; }

 private:
  std::string variable_;
};

GradedVariable field_variable(const JetRingSpec& spec, int fiber, MultiIndex jet = {});
GradedVariable parameter_variable(const JetRingSpec& spec, int index);
GradedVariable coordinate_variable(const JetRingSpec& spec, int i);

/// Coordinates, parameters and all field jets of order <= max_jet_order.
UniversePtr jet_universe(const JetRingSpec& spec);

/// Largest jet order among the variables of p (coordinates and parameters count 0).
int jet_order(const Poly& p);

/// D_i = d/dt^i + sum v_{alpha+e_i} d/dv_alpha, acting on every jet family
/// present in the universe. Throws JetOverflowError if an image leaves it.
Poly total_derivative(int i, const Poly& p);
Poly apply_multi_derivative(const MultiIndex& alpha, const Poly& p);

/// All D_alpha(eq) with |alpha| <= k, zeros and duplicates removed.
std::vector<Poly> prolong(const std::vector<Poly>& equations, int k);

}  // namespace bvforge
