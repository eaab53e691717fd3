#include "bvforge/universe.hpp"

#include <algorithm>
#include <stdexcept>

namespace bvforge {

UniversePtr Universe::make(std::vector<GradedVariable> vars, int base_dim) {
  std::sort(vars.begin(), vars.end(), canonical_less);
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  auto u = std::shared_ptr<Universe>(new Universe());
  u->base_dim_ = base_dim;
  u->vars_ = std::move(vars);
  u->odd_.resize(u->vars_.size());
  for (VarId i = 0; i < u->vars_.size(); ++i) {
    const auto& v = u->vars_[i];
    if (static_cast<int>(v.jet.size()) != base_dim)
      throw std::invalid_argument("variable " + display_name(v) + " has a jet index of wrong length");
    u->odd_[i] = v.is_odd();
    if (!u->index_.emplace(v, i).second)
      throw std::invalid_argument("duplicate variable " + display_name(v));
  }
  return u;
}

std::optional<VarId> Universe::find(const GradedVariable& v) const {
  auto it = index_.find(v);
  if (it == index_.end() || !(it->first == v)) return std::nullopt;
  return it->second;
}

VarId Universe::id_of(const GradedVariable& v) const {
  auto id = find(v);
  if (!id) throw std::out_of_range("variable " + display_name(v) + " is not in the universe");
  return *id;
}

std::optional<VarId> Universe::shifted(VarId id, int i) const {
  const auto& v = vars_[id];
  if (v.kind == VarKind::Coordinate || v.kind == VarKind::Parameter) return std::nullopt;
  MultiIndex j = v.jet;
  j[i] += 1;
  return find(v.with_jet(std::move(j)));
}

std::optional<VarId> Universe::coordinate(int i) const {
  for (VarId id = 0; id < vars_.size(); ++id) {
    const auto& v = vars_[id];
    if (v.kind != VarKind::Coordinate) break;
    if (v.fiber_index == i) return id;
  }
  return std::nullopt;
}

std::optional<VarId> Universe::conjugate(VarId id) const {
  GradedVariable c = vars_[id];
  switch (c.kind) {
    case VarKind::Field: c.kind = VarKind::Antifield; break;
    case VarKind::Antifield: c.kind = VarKind::Field; break;
    case VarKind::Ghost: c.kind = VarKind::Antighost; break;
    case VarKind::Antighost: c.kind = VarKind::Ghost; break;
    default: return std::nullopt;
  }
  return find(c);
}

UniversePtr Universe::extended(std::vector<GradedVariable> extra) const {
  std::vector<GradedVariable> all = vars_;
  all.insert(all.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
  return make(std::move(all), base_dim_);
}

}  // namespace bvforge
