#include "bvforge/variable.hpp"

#include <algorithm>
#include <tuple>

namespace bvforge {

bool multi_index_less(const MultiIndex& a, const MultiIndex& b) {
  int oa = order_of(a), ob = order_of(b);
  if (oa != ob) return oa < ob;
  // larger leading entries first
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

static void enumerate_indices(int n, int remaining, MultiIndex& cur, std::size_t pos,
                              std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    for (int v = 0; v <= remaining; ++v) {
      cur[pos] = v;
      out.push_back(cur);
    }
    cur[pos] = 0;
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[pos] = v;
    enumerate_indices(n, remaining - v, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int max_order) {
  std::vector<MultiIndex> out;
  if (n <= 0) {
    out.emplace_back();
    return out;
  }
  MultiIndex cur(n, 0);
  enumerate_indices(n, max_order, cur, 0, out);
  std::sort(out.begin(), out.end(), multi_index_less);
  return out;
}

const char* kind_name(VarKind k) {
  switch (k) {
    case VarKind::Coordinate: return "coordinate";
    case VarKind::Parameter: return "parameter";
    case VarKind::Field: return "field";
    case VarKind::Antifield: return "antifield";
    case VarKind::Antighost: return "antighost";
    case VarKind::Ghost: return "ghost";
  }
  return "?";
}

Bidegree GradedVariable::bidegree() const {
  Bidegree b;
  switch (kind) {
    case VarKind::Coordinate:
    case VarKind::Parameter:
    case VarKind::Field: break;
    case VarKind::Antifield: b.antifield_number = 1; break;
    case VarKind::Antighost: b.antifield_number = level + 1; break;
    case VarKind::Ghost: b.pure_ghost_number = level; break;
  }
  b.parity = (b.antifield_number + b.pure_ghost_number + intrinsic_parity) & 1;
  return b;
}

GradedVariable GradedVariable::with_jet(MultiIndex j) const {
  GradedVariable v = *this;
  v.jet = std::move(j);
  return v;
}

bool canonical_less(const GradedVariable& a, const GradedVariable& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.level != b.level) return a.level < b.level;
  if (a.fiber_index != b.fiber_index) return a.fiber_index < b.fiber_index;
  if (a.jet != b.jet) return multi_index_less(a.jet, b.jet);
  return std::tie(a.name, a.intrinsic_parity) < std::tie(b.name, b.intrinsic_parity);
}

std::string ghost_name(int level, int index) {
  return "C_" + std::to_string(level) + "_" + std::to_string(index);
}

std::string display_name(const GradedVariable& v) {
  std::string s = v.name;
  if (v.kind == VarKind::Antifield || v.kind == VarKind::Antighost) s += '*';
  if (order_of(v.jet) > 0) {
    s += '[';
    for (std::size_t i = 0; i < v.jet.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v.jet[i]);
    }
    s += ']';
  }
  return s;
}

}  // namespace bvforge
