#include "bvforge/jet.hpp"

#include <algorithm>

namespace bvforge {

JetRingSpec JetRingSpec::canonical() const {
  JetRingSpec s = *this;
  std::sort(s.fields.begin(), s.fields.end(),
            [](const FiberVariable& a, const FiberVariable& b) { return a.name < b.name; });
  std::sort(s.parameters.begin(), s.parameters.end());
  if (s.coordinates.empty() && s.base_dim > 0) {
    if (s.base_dim == 1) {
      s.coordinates.push_back("t");
    } else {
      for (int i = 1; i <= s.base_dim; ++i) s.coordinates.push_back("t" + std::to_string(i));
    }
  }
  if (s.finite_mode()) s.max_jet_order = 0;
  return s;
}

int JetRingSpec::fiber_index(const std::string& field) const {
  for (std::size_t i = 0; i < fields.size(); ++i)
    if (fields[i].name == field) return static_cast<int>(i);
  return -1;
}

GradedVariable field_variable(const JetRingSpec& spec, int fiber, MultiIndex jet) {
  GradedVariable v;
  v.name = spec.fields.at(fiber).name;
  v.fiber_index = fiber;
  v.jet = jet.empty() ? MultiIndex(spec.base_dim, 0) : std::move(jet);
  v.kind = VarKind::Field;
  v.intrinsic_parity = spec.fields[fiber].intrinsic_parity;
  return v;
}

GradedVariable parameter_variable(const JetRingSpec& spec, int index) {
  GradedVariable v;
  v.name = spec.parameters.at(index);
  v.fiber_index = index;
  v.jet = MultiIndex(spec.base_dim, 0);
  v.kind = VarKind::Parameter;
  return v;
}

GradedVariable coordinate_variable(const JetRingSpec& spec, int i) {
  GradedVariable v;
  v.name = spec.coordinates.at(i);
  v.fiber_index = i;
  v.jet = MultiIndex(spec.base_dim, 0);
  v.kind = VarKind::Coordinate;
  return v;
}

UniversePtr jet_universe(const JetRingSpec& spec) {
  std::vector<GradedVariable> vars;
  for (int i = 0; i < spec.base_dim; ++i) vars.push_back(coordinate_variable(spec, i));
  for (int i = 0; i < static_cast<int>(spec.parameters.size()); ++i) vars.push_back(parameter_variable(spec, i));
  auto jets = multi_indices_up_to(spec.base_dim, spec.max_jet_order);
  for (int f = 0; f < static_cast<int>(spec.fields.size()); ++f)
    for (const auto& a : jets) vars.push_back(field_variable(spec, f, a));
  return Universe::make(std::move(vars), spec.base_dim);
}

int jet_order(const Poly& p) {
  int k = 0;
  if (p.is_zero()) return 0;
  for (VarId v : p.support()) k = std::max(k, order_of(p.universe()->var(v).jet));
  return k;
}

Poly total_derivative(int i, const Poly& p) {
  if (p.is_zero()) return p;
  const auto& u = p.universe();
  if (u->finite_mode()) throw std::invalid_argument("total derivative requested in finite-dimensional mode");
  if (i < 0 || i >= u->base_dim()) throw std::out_of_range("base coordinate index out of range");
  const auto& odd = u->odd_mask();
  std::vector<Poly::Term> out;
  for (const auto& t : p.terms()) {
    int odd_before = 0;
    for (const auto& [v, e] : t.mono.factors()) {
      const auto& var = u->var(v);
      if (var.kind == VarKind::Parameter) continue;
      Monomial rest = t.mono.without(v);
      if (var.kind == VarKind::Coordinate) {
        if (var.fiber_index == i) out.push_back({rest, t.coef * e});
        continue;
      }
      auto w = u->shifted(v, i);
      if (!w) {
        MultiIndex j = var.jet;
        j[i] += 1;
        throw JetOverflowError(display_name(var.with_jet(j)),
                               "jet order overflow: " + display_name(var.with_jet(j)) + " is outside the window");
      }
      Rational c = t.coef * e;
      if (odd[v]) {
        if (odd_before & 1) c = -c;
        int s = koszul_product_sign(Monomial::variable(*w), rest, odd);
        if (s == 0) {
          ++odd_before;
          continue;
        }
        if (s < 0) c = -c;
        ++odd_before;
      }
      out.push_back({Monomial::variable(*w) * rest, c});
    }
  }
  return Poly::from_terms(u, std::move(out));
}

Poly apply_multi_derivative(const MultiIndex& alpha, const Poly& p) {
  Poly r = p;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (int k = 0; k < alpha[i]; ++k) r = total_derivative(static_cast<int>(i), r);
  return r;
}

std::vector<Poly> prolong(const std::vector<Poly>& equations, int k) {
  std::vector<Poly> out;
  for (const auto& eq : equations) {
    if (eq.is_zero()) continue;
    int n = eq.universe()->base_dim();
    for (const auto& a : multi_indices_up_to(n, n == 0 ? 0 : k)) {
      Poly d = apply_multi_derivative(a, eq);
      if (d.is_zero()) continue;
      if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(std::move(d));
    }
  }
  return out;
}

}  // namespace bvforge
