#include "bvforge/bv_algebra.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "bvforge/linalg.hpp"

namespace bvforge {

namespace {

constexpr std::size_t kMaxUnknowns = 20000;

bool is_source_kind(VarKind k) { return k == VarKind::Field || k == VarKind::Ghost; }
bool is_dual_kind(VarKind k) { return k == VarKind::Antifield || k == VarKind::Antighost; }

VarKind conjugate_kind(VarKind k) {
  switch (k) {
    case VarKind::Field: return VarKind::Antifield;
    case VarKind::Antifield: return VarKind::Field;
    case VarKind::Ghost: return VarKind::Antighost;
    default: return VarKind::Ghost;
  }
}

std::set<VarId> joint_support(const Poly& f, const Poly& g) {
  std::set<VarId> s;
  for (VarId v : f.support()) s.insert(v);
  for (VarId v : g.support()) s.insert(v);
  return s;
}

std::pair<Poly, Poly> common(const Poly& f, const Poly& g) {
  if (same_universe(f.universe(), g.universe())) return {f, g};
  if (f.is_zero()) return {Poly(g.universe()), g};
  return {f, g.embed(f.universe())};
}

Poly finite_bracket(const Poly& f0, const Poly& g0) {
  auto [f, g] = common(f0, g0);
  const auto& u = *f.universe();
  std::set<std::pair<VarId, VarId>> pairs;
  for (VarId id : joint_support(f, g)) {
    VarKind k = u.var(id).kind;
    if (!is_source_kind(k) && !is_dual_kind(k)) continue;
    auto q = u.conjugate(id);
    if (!q) throw std::invalid_argument("unpaired variable " + display_name(u.var(id)));
    pairs.insert(is_source_kind(k) ? std::make_pair(id, *q) : std::make_pair(*q, id));
  }
  Poly out(f.universe());
  for (const auto& [v, q] : pairs) {
    out += graded_derivative(f, v, Side::Right) * graded_derivative(g, q, Side::Left);
    out -= graded_derivative(f, q, Side::Right) * graded_derivative(g, v, Side::Left);
  }
  return out;
}

Poly local_bracket_raw(const Poly& f0, const Poly& g0) {
  auto [f, g] = common(f0, g0);
  const auto& u = *f.universe();
  std::map<GradedVariable, VarId, CanonicalLess> family;
  for (VarId id = 0; id < u.size(); ++id) family.emplace(u.var(id).base(), id);
  std::set<std::pair<GradedVariable, GradedVariable>, std::function<bool(const std::pair<GradedVariable, GradedVariable>&,
                                                                          const std::pair<GradedVariable, GradedVariable>&)>>
      pairs([](const auto& a, const auto& b) {
        if (canonical_less(a.first, b.first)) return true;
        if (canonical_less(b.first, a.first)) return false;
        return canonical_less(a.second, b.second);
      });
  for (VarId id : joint_support(f, g)) {
    GradedVariable b = u.var(id).base();
    if (!is_source_kind(b.kind) && !is_dual_kind(b.kind)) continue;
    GradedVariable c = b;
    c.kind = conjugate_kind(b.kind);
    pairs.insert(is_source_kind(b.kind) ? std::make_pair(b, c) : std::make_pair(c, b));
  }
  Poly out(f.universe());
  for (const auto& [v, q] : pairs) {
    auto iv = family.find(v), iq = family.find(q);
    if (iv == family.end() || iq == family.end()) continue;
    out += variational_derivative(f, iv->second, Side::Right) * variational_derivative(g, iq->second, Side::Left);
    out -= variational_derivative(f, iq->second, Side::Right) * variational_derivative(g, iv->second, Side::Left);
  }
  return out;
}

int max_degree(const Poly& p) {
  int d = 0;
  for (const auto& t : p.terms()) d = std::max(d, static_cast<int>(t.mono.degree()));
  return d;
}

std::vector<Monomial> master_ansatz(const Universe& u, int order, int degree) {
  struct Gen {
    VarId id;
    int af, pg;
    bool odd, ghost;
  };
  std::vector<Gen> gens;
  for (VarId id = 0; id < u.size(); ++id) {
    const auto& v = u.var(id);
    auto b = v.bidegree();
    if (b.antifield_number > order || b.pure_ghost_number > order) continue;
    gens.push_back({id, b.antifield_number, b.pure_ghost_number, v.is_odd(), v.kind == VarKind::Ghost});
  }
  std::vector<Monomial> out;
  std::vector<Monomial::Factor> cur;
  std::function<void(std::size_t, int, int, int, int, int)> rec = [&](std::size_t i, int af, int pg, int deg, int ghosts,
                                                                       int parity) {
    if (af == 0 && pg == 0 && ghosts >= 2 && parity == 0) {
      out.emplace_back(cur);
      if (out.size() > kMaxUnknowns) throw MasterError("master equation ansatz exceeds " + std::to_string(kMaxUnknowns) + " unknowns", order);
    }
    if (deg == 0) return;
    for (std::size_t j = i; j < gens.size(); ++j) {
      const Gen& g = gens[j];
      if (g.af > af || g.pg > pg) continue;
      int e_max = g.odd ? 1 : deg;
      for (int e = 1; e <= e_max; ++e) {
        if (e * g.af > af || e * g.pg > pg || e > deg) break;
        cur.emplace_back(g.id, e);
        rec(j + 1, af - e * g.af, pg - e * g.pg, deg - e, ghosts + (g.ghost ? e : 0), (parity + (g.odd ? e : 0)) % 2);
        cur.pop_back();
      }
    }
  };
  rec(0, order, order, degree, 0, 0);
  std::sort(out.begin(), out.end(), MonomialGreater());
  return out;
}

}  // namespace

BVUniverse assemble_bv(const LocalAction& s, const KTData& kt) {
  if (!same_universe(s.universe, kt.action.universe) && s.ring.fields.size() != kt.action.ring.fields.size())
    throw std::invalid_argument("Koszul-Tate data was built from a different action");
  BVUniverse bv;
  bv.jet_window = kt.jet_window;
  const int n = kt.universe->base_dim();
  std::vector<GradedVariable> extra;
  std::vector<const AntighostGenerator*> gens;
  for (const auto& lvl : kt.levels)
    for (const auto& g : lvl) {
      GradedVariable c;
      c.name = g.name();
      c.fiber_index = g.index;
      c.jet = MultiIndex(n, 0);
      c.kind = VarKind::Ghost;
      c.level = g.level;
      c.intrinsic_parity = g.intrinsic_parity;
      bv.ghosts.push_back(c);
      gens.push_back(&g);
      for (const auto& a : multi_indices_up_to(n, kt.universe->finite_mode() ? 0 : kt.jet_window)) extra.push_back(c.with_jet(a));
    }
  bv.universe = kt.universe->extended(extra);
  for (const auto& [v, p] : kt.images) bv.images.emplace(v, p.embed(bv.universe));
  for (const auto* g : gens) bv.ghost_coefficients.push_back(g->image.embed(bv.universe));
  return bv;
}

Poly antibracket(const Poly& f, const Poly& g, BracketMode mode) {
  if (mode == BracketMode::Finite) return finite_bracket(f, g);
  return h_normal_form(local_bracket_raw(f, g));
}

Poly antibracket(const Poly& f, const Poly& g) {
  const auto& u = f.is_zero() ? g.universe() : f.universe();
  return antibracket(f, g, u->finite_mode() ? BracketMode::Finite : BracketMode::Local);
}

Poly apply_d_kt(const BVUniverse& bv, const Poly& e0) {
  Poly e = same_universe(e0.universe(), bv.universe) ? e0 : e0.embed(bv.universe);
  Poly out(bv.universe);
  for (VarId id : e.support()) {
    const auto& v = bv.universe->var(id);
    if (!is_dual_kind(v.kind)) continue;
    auto it = bv.images.find(v);
    if (it == bv.images.end()) throw std::invalid_argument("no d_KT value for " + display_name(v));
    if (it->second.is_zero()) continue;
    out += it->second * graded_derivative(e, id, Side::Left);
  }
  return out;
}

Poly build_s_kt(const LocalAction& s, const BVUniverse& bv) {
  Poly out = s.lagrangian.embed(bv.universe);
  for (std::size_t j = 0; j < bv.ghosts.size(); ++j)
    out += bv.ghost_coefficients[j] * Poly::variable(bv.universe, bv.ghosts[j]);
  return out;
}

MasterAction solve_master(const LocalAction& s, const BVUniverse& bv, int max_order, int degree_bound) {
  MasterAction m;
  m.universe = bv.universe;
  m.mode = bv.mode();
  const bool local = m.mode == BracketMode::Local;
  auto nf = [local](const Poly& p) { return local ? h_normal_form(p) : p; };
  Poly action = build_s_kt(s, bv);
  for (int k = 2;; ++k) {
    Poly b = antibracket(action, action, m.mode);
    if (b.is_zero()) {
      m.terminated = true;
      m.order = k - 1;
      break;
    }
    if (k > max_order) {
      m.order = max_order;
      break;
    }
    Poly d = nf(b.antifield_component(k - 1));
    if (d.is_zero()) continue;
    if (!nf(apply_d_kt(bv, d)).is_zero())
      throw MasterError("d_KT-closedness fails at order " + std::to_string(k) + ", degree " + std::to_string(max_degree(d)), k);
    int degree = std::min(max_degree(d) + 1, std::max(degree_bound, max_degree(d)));
    auto ansatz = master_ansatz(*bv.universe, k, degree);
    std::map<Monomial, std::uint32_t, MonomialGreater> row;
    auto to_vec = [&row](const Poly& p) {
      SparseVec v;
      for (const auto& t : p.terms()) {
        auto [it, fresh] = row.emplace(t.mono, static_cast<std::uint32_t>(row.size()));
        v.emplace_back(it->second, t.coef);
      }
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      return v;
    };
    std::vector<SparseVec> cols;
    for (const auto& mono : ansatz) cols.push_back(to_vec(nf(apply_d_kt(bv, Poly::monomial(bv.universe, mono, 2)))));
    auto x = solve_columns(cols, to_vec(-d));
    if (!x)
      throw MasterError("no solution of 2 d_KT(S_" + std::to_string(k) + ") = -D within degree " + std::to_string(degree), k);
    for (std::size_t j = 0; j < ansatz.size(); ++j)
      if (!is_zero((*x)[j])) action += Poly::monomial(bv.universe, ansatz[j], (*x)[j]);
  }
  m.action = action;
  int top = 0;
  for (const auto& t : action.terms()) top = std::max(top, bidegree_of(t.mono, *bv.universe).antifield_number);
  for (int a = 0; a <= top; ++a) m.pieces.push_back(action.antifield_component(a));
  auto check = verify_master(action, m.mode);
  m.residual = check.residual;
  m.witness = check.witness;
  return m;
}

MasterCheck verify_master(const Poly& s_cm, BracketMode mode) {
  MasterCheck c;
  if (mode == BracketMode::Finite) {
    c.residual = finite_bracket(s_cm, s_cm);
  } else {
    auto r = is_total_divergence(local_bracket_raw(s_cm, s_cm));
    c.residual = r.remainder;
    c.witness = r.witness;
  }
  c.holds = c.residual.is_zero();
  return c;
}

}  // namespace bvforge
