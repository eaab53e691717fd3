#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace bvforge {

using MultiIndex = std::vector<int>;

inline int order_of(const MultiIndex& a) {
  int s = 0;
  for (int v : a) s += v;
  return s;
}

/// Graded-lexicographic order on multi-indices: by total order, then with
/// larger leading entries first, so x[1,0] precedes x[0,1].
bool multi_index_less(const MultiIndex& a, const MultiIndex& b);

/// All multi-indices of length n and order <= max_order, in multi_index_less order.
std::vector<MultiIndex> multi_indices_up_to(int n, int max_order);

enum class VarKind : std::uint8_t {
  Coordinate,  // base coordinate t^i
  Parameter,   // constant symbol (mass, coupling), invisible to total derivatives
  Field,
  Antifield,
  Antighost,
  Ghost,
};

const char* kind_name(VarKind k);

struct Bidegree {
  int antifield_number = 0;
  int pure_ghost_number = 0;
  int parity = 0;  // 0 even, 1 odd

  int ghost_number() const { return pure_ghost_number - antifield_number; }
  Bidegree operator+(const Bidegree& o) const {
    return {antifield_number + o.antifield_number, pure_ghost_number + o.pure_ghost_number,
            (parity + o.parity) & 1};
  }
  bool operator==(const Bidegree&) const = default;
};

/// A named generator of the bigraded algebra.
///
/// Antifields share the name and fiber index of their field; ghosts and
/// antighosts share the name "C_k_j" and carry the level k and index j.
struct GradedVariable {
  std::string name;
  int fiber_index = 0;
  MultiIndex jet;
  VarKind kind = VarKind::Field;
  int level = 0;             // antighost / ghost level, 0 otherwise
  int intrinsic_parity = 0;  // fermion flag of the underlying field

  Bidegree bidegree() const;
  int parity() const { return bidegree().parity; }
  bool is_odd() const { return parity() == 1; }

  /// Same generator with a different jet multi-index.
  GradedVariable with_jet(MultiIndex j) const;
  GradedVariable base() const { return with_jet(MultiIndex(jet.size(), 0)); }
  bool is_base() const { return order_of(jet) == 0; }

  bool operator==(const GradedVariable&) const = default;
};

/// Fixed total order used for canonical forms: coordinates, parameters,
/// fields, antifields, antighosts, ghosts; then level, fiber index, jet.
bool canonical_less(const GradedVariable& a, const GradedVariable& b);

struct CanonicalLess {
  bool operator()(const GradedVariable& a, const GradedVariable& b) const {
    return canonical_less(a, b);
  }
};

/// Canonical ghost/antighost base name for level k, index j.
std::string ghost_name(int level, int index);

/// The ASCII display form: x, x[1,0], x*, x*[2], C_1_1, C_1_1*.
std::string display_name(const GradedVariable& v);

}  // namespace bvforge
