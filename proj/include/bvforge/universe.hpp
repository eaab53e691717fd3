#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "bvforge/variable.hpp"

namespace bvforge {

using VarId = std::uint32_t;

class Universe;
using UniversePtr = std::shared_ptr<const Universe>;

/// An immutable, canonically ordered set of generators. Variable ids are
/// positions in canonical order; id 0 is the largest variable for the
/// monomial order.
class Universe {
 public:
  /// Sorts and deduplicates `vars`. base_dim = 0 means finite-dimensional mode.
  static UniversePtr make(std::vector<GradedVariable> vars, int base_dim);

  std::size_t size() const { return vars_.size(); }
  const GradedVariable& var(VarId id) const { return vars_[id]; }
  const std::vector<GradedVariable>& vars() const { return vars_; }
  int base_dim() const { return base_dim_; }
  bool finite_mode() const { return base_dim_ == 0; }

  std::optional<VarId> find(const GradedVariable& v) const;
  bool contains(const GradedVariable& v) const { return find(v).has_value(); }
  VarId id_of(const GradedVariable& v) const;  // throws if absent

  bool is_odd(VarId id) const { return odd_[id]; }
  const std::vector<bool>& odd_mask() const { return odd_; }

  /// The variable with jet index raised by e_i, if present.
  std::optional<VarId> shifted(VarId id, int i) const;
  /// Id of base coordinate t^i, if present.
  std::optional<VarId> coordinate(int i) const;
  /// Conjugate generator under the antibracket pairing (same jet index).
  std::optional<VarId> conjugate(VarId id) const;

  /// A new universe with `extra` added.
  UniversePtr extended(std::vector<GradedVariable> extra) const;

  bool same_as(const Universe& other) const {
    return base_dim_ == other.base_dim_ && vars_ == other.vars_;
  }

 private:
  Universe() = default;
  std::vector<GradedVariable> vars_;
  std::vector<bool> odd_;
  std::map<GradedVariable, VarId, CanonicalLess> index_;
  int base_dim_ = 0;
};

inline bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  return a == b || (a && b && a->same_as(*b));
}

}  // namespace bvforge
