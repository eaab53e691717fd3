#include "bvforge/variational.hpp"

#include <algorithm>
#include <stdexcept>

#include "bvforge/poly_io.hpp"

namespace bvforge {

LocalAction LocalAction::make(const JetRingSpec& ring, const Poly& lagrangian) {
  LocalAction s;
  s.ring = ring.canonical();
  s.universe = jet_universe(s.ring);
  for (VarId v : lagrangian.support()) {
    VarKind k = lagrangian.universe()->var(v).kind;
    if (k != VarKind::Coordinate && k != VarKind::Parameter && k != VarKind::Field)
      throw std::invalid_argument("lagrangian may not contain " + display_name(lagrangian.universe()->var(v)));
  }
  s.lagrangian = lagrangian.embed(s.universe);
  if (parity_of(s.lagrangian) != 0) throw std::invalid_argument("lagrangian must be even");
  return s;
}

LocalAction LocalAction::parse(const JetRingSpec& ring, const std::string& lagrangian) {
  JetRingSpec c = ring.canonical();
  return make(c, parse_poly(lagrangian, jet_universe(c)));
}

VarId LocalAction::field_id(int fiber, const MultiIndex& jet) const {
  return universe->id_of(field_variable(ring, fiber, jet));
}

Poly variational_derivative(const Poly& p, VarId base, Side side) {
  const auto& u = p.universe();
  Poly out(u);
  if (p.is_zero()) return out;
  const GradedVariable b = u->var(base).base();
  for (VarId id : p.support()) {
    const auto& v = u->var(id);
    if (!(v.base() == b)) continue;
    Poly d = graded_derivative(p, id, side);
    d = apply_multi_derivative(v.jet, d);
    if (order_of(v.jet) & 1) d = -d;
    out += d;
  }
  return out;
}

Poly euler_lagrange(const LocalAction& s, int fiber) {
  if (fiber < 0 || fiber >= s.field_count()) throw std::out_of_range("fiber index out of range");
  return variational_derivative(s.lagrangian, s.field_id(fiber), Side::Right).embed(s.universe);
}

EulerLagrangeSystem euler_lagrange_system(const LocalAction& s) {
  EulerLagrangeSystem sys;
  for (int i = 0; i < s.field_count(); ++i) sys.components.push_back(euler_lagrange(s, i));
  sys.ideal_generators = sys.components;
  return sys;
}

Poly insertion_map(const LocalAction& s, const VectorFieldComponents& x) {
  Poly out(s.universe);
  std::vector<Poly> el;
  for (int i = 0; i < s.field_count(); ++i) el.push_back(euler_lagrange(s, i));
  for (const auto& [key, coef] : x) {
    const auto& [fiber, jet] = key;
    if (fiber < 0 || fiber >= s.field_count()) throw std::out_of_range("fiber index out of range");
    if (!coef.is_zero() && !same_universe(coef.universe(), s.universe))
      throw std::invalid_argument("vector field component lives in a different universe");
    Poly d = jet.empty() ? el[fiber] : apply_multi_derivative(jet, el[fiber]);
    out += coef * d;
  }
  return out;
}

Poly insertion_map(const LocalAction& s, const std::vector<Poly>& x) {
  VectorFieldComponents c;
  for (std::size_t i = 0; i < x.size(); ++i) c[{static_cast<int>(i), {}}] = x[i];
  return insertion_map(s, c);
}

std::vector<Poly> el_ideal(const LocalAction& s, int prolongation_order) {
  return prolong(euler_lagrange_system(s).components, prolongation_order);
}

namespace {

struct Key {
  std::vector<std::pair<VarId, std::uint32_t>> families;
  std::vector<int> weight;
  int coordinate_bound = 0;
  auto operator<=>(const Key&) const = default;
};

struct Piece {
  std::vector<Monomial> columns;
  std::map<Monomial, std::uint32_t, MonomialGreater> index;
  std::vector<std::pair<int, Monomial>> ansatz;
  EchelonBasis basis;
};

}  // namespace

struct DivergenceReducer::Impl {
  UniversePtr u;
  int order;
  int n;
  std::vector<VarId> coordinates;          // by coordinate index, or missing
  std::vector<long> family_of;             // -1 for coordinates
  std::map<VarId, std::vector<VarId>> family_jets;
  std::map<Key, Piece> cache;

  Impl(UniversePtr universe, int witness_order) : u(std::move(universe)), order(witness_order) {
    n = u->base_dim();
    coordinates.assign(n, static_cast<VarId>(-1));
    family_of.assign(u->size(), -1);
    for (VarId id = 0; id < u->size(); ++id) {
      const auto& v = u->var(id);
      if (v.kind == VarKind::Coordinate) {
        coordinates[v.fiber_index] = id;
        continue;
      }
      auto base = u->find(v.base());
      VarId fam = base ? *base : id;
      family_of[id] = fam;
      family_jets[fam].push_back(id);
    }
  }

  std::pair<Key, int> key_of(const Monomial& m) const {
    Key k;
    k.weight.assign(n, 0);
    int coord_deg = 0;
    std::map<VarId, std::uint32_t> fam;
    for (const auto& [v, e] : m.factors()) {
      const auto& var = u->var(v);
      if (var.kind == VarKind::Coordinate) {
        k.weight[var.fiber_index] -= static_cast<int>(e);
        coord_deg += static_cast<int>(e);
        continue;
      }
      fam[static_cast<VarId>(family_of[v])] += e;
      for (int i = 0; i < n; ++i) k.weight[i] += var.jet[i] * static_cast<int>(e);
    }
    k.families.assign(fam.begin(), fam.end());
    return {k, coord_deg};
  }

  void enumerate(const Key& k, std::size_t fi, std::uint32_t left, std::size_t min_idx, std::vector<int>& remaining,
                 std::vector<Monomial::Factor>& cur, std::vector<Monomial>& out) const {
    if (fi == k.families.size()) {
      for (int r : remaining)
        if (r != 0) return;
      out.emplace_back(cur);
      return;
    }
    if (left == 0) {
      std::size_t next = fi + 1;
      std::uint32_t cnt = next < k.families.size() ? k.families[next].second : 0;
      enumerate(k, next, cnt, 0, remaining, cur, out);
      return;
    }
    const auto& jets = family_jets.at(k.families[fi].first);
    for (std::size_t idx = min_idx; idx < jets.size(); ++idx) {
      const auto& var = u->var(jets[idx]);
      if (order_of(var.jet) > order) continue;
      bool fits = true;
      for (int i = 0; i < n; ++i) fits = fits && var.jet[i] <= remaining[i];
      if (!fits) continue;
      for (int i = 0; i < n; ++i) remaining[i] -= var.jet[i];
      cur.emplace_back(jets[idx], 1);
      enumerate(k, fi, left - 1, u->is_odd(jets[idx]) ? idx + 1 : idx, remaining, cur, out);
      cur.pop_back();
      for (int i = 0; i < n; ++i) remaining[i] += var.jet[i];
    }
  }

  void coordinate_powers(int i, int budget, std::vector<int>& beta, std::vector<std::vector<int>>& out) const {
    if (i == n) {
      out.push_back(beta);
      return;
    }
    int cap = coordinates[i] == static_cast<VarId>(-1) ? 0 : budget;
    for (int b = 0; b <= cap; ++b) {
      beta[i] = b;
      coordinate_powers(i + 1, budget - b, beta, out);
    }
    beta[i] = 0;
  }

  Piece& piece(const Key& k) {
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    Piece pc;
    std::vector<Poly> images;
    std::vector<std::vector<int>> betas;
    std::vector<int> beta(n, 0);
    coordinate_powers(0, k.coordinate_bound, beta, betas);
    for (int i = 0; i < n; ++i) {
      for (const auto& b : betas) {
        std::vector<int> target(n);
        bool ok = true;
        for (int j = 0; j < n; ++j) {
          target[j] = k.weight[j] - (j == i ? 1 : 0) + b[j];
          ok = ok && target[j] >= 0;
        }
        if (!ok) continue;
        std::vector<Monomial> monos;
        std::vector<Monomial::Factor> cur;
        for (int j = 0; j < n; ++j)
          if (b[j] > 0) cur.emplace_back(coordinates[j], b[j]);
        std::uint32_t first = k.families.empty() ? 0 : k.families[0].second;
        enumerate(k, 0, first, 0, target, cur, monos);
        for (const auto& m : monos) {
          Poly img;
          try {
            img = total_derivative(i, Poly::monomial(u, m));
          } catch (const JetOverflowError&) {
            continue;
          }
          if (img.is_zero()) continue;
          pc.ansatz.emplace_back(i, m);
          images.push_back(std::move(img));
        }
      }
    }
    for (const auto& img : images)
      for (const auto& t : img.terms()) pc.index.emplace(t.mono, 0);
    for (auto& [m, c] : pc.index) {
      c = static_cast<std::uint32_t>(pc.columns.size());
      pc.columns.push_back(m);
    }
    for (std::uint32_t tag = 0; tag < images.size(); ++tag) {
      SparseVec v;
      for (const auto& t : images[tag].terms()) v.emplace_back(pc.index.at(t.mono), t.coef);
      pc.basis.insert(std::move(v), tag);
    }
    return cache.emplace(k, std::move(pc)).first->second;
  }

  DivergenceResult reduce(const Poly& p) {
    DivergenceResult r;
    r.remainder = Poly(u);
    r.witness.assign(n, Poly(u));
    std::map<Key, std::vector<Poly::Term>> groups;
    std::map<Key, int> coord_bounds;
    for (const auto& t : p.terms()) {
      auto [k, cd] = key_of(t.mono);
      groups[k].push_back(t);
      coord_bounds[k] = std::max(coord_bounds[k], cd + 1);
    }
    std::vector<Poly::Term> rem;
    for (auto& [k0, terms] : groups) {
      Key k = k0;
      k.coordinate_bound = coordinates.empty() || coordinates[0] == static_cast<VarId>(-1) ? 0 : coord_bounds[k0];
      Piece& pc = piece(k);
      std::map<std::uint32_t, Monomial> extra;
      SparseVec v;
      std::uint32_t next = static_cast<std::uint32_t>(pc.columns.size());
      for (const auto& t : terms) {
        auto it = pc.index.find(t.mono);
        std::uint32_t col;
        if (it != pc.index.end()) {
          col = it->second;
        } else {
          col = next++;
          extra.emplace(col, t.mono);
        }
        v.emplace_back(col, t.coef);
      }
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      auto red = pc.basis.reduce(std::move(v));
      for (const auto& [col, c] : red.remainder)
        rem.push_back({col < pc.columns.size() ? pc.columns[col] : extra.at(col), c});
      for (const auto& [tag, c] : red.combination) {
        const auto& [i, m] = pc.ansatz[tag];
        r.witness[i] += Poly::monomial(u, m, c);
      }
    }
    r.remainder = Poly::from_terms(u, std::move(rem));
    r.is_divergence = r.remainder.is_zero();
    return r;
  }
};

DivergenceReducer::DivergenceReducer(UniversePtr u, int witness_order)
    : impl_(std::make_unique<Impl>(std::move(u), witness_order)) {}
DivergenceReducer::~DivergenceReducer() = default;
DivergenceReducer::DivergenceReducer(DivergenceReducer&&) noexcept = default;
DivergenceReducer& DivergenceReducer::operator=(DivergenceReducer&&) noexcept = default;

DivergenceResult DivergenceReducer::reduce(const Poly& p) {
  if (p.is_zero()) {
    DivergenceResult r;
    r.is_divergence = true;
    r.remainder = Poly(impl_->u);
    r.witness.assign(impl_->n, Poly(impl_->u));
    return r;
  }
  if (!same_universe(p.universe(), impl_->u)) throw std::invalid_argument("polynomial lives in a different universe");
  if (impl_->u->finite_mode()) {
    DivergenceResult r;
    r.remainder = p;
    return r;
  }
  return impl_->reduce(p);
}

DivergenceResult is_total_divergence(const Poly& p, int witness_order) {
  if (p.is_zero()) {
    DivergenceResult r;
    r.is_divergence = true;
    r.remainder = p;
    int n = p.universe() ? p.universe()->base_dim() : 0;
    r.witness.assign(n, p);
    return r;
  }
  return DivergenceReducer(p.universe(), witness_order).reduce(p);
}

Poly h_normal_form(const Poly& p, int witness_order) {
  if (p.is_zero()) return p;
  return DivergenceReducer(p.universe(), witness_order).normal_form(p);
}

}  // namespace bvforge
