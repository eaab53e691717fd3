#include "bvforge/koszul_tate.hpp"

#include <algorithm>

namespace bvforge {

namespace {

constexpr int kMaxRounds = 4;

bool basis_side(const GradedVariable& v) {
  return v.kind == VarKind::Antifield || v.kind == VarKind::Antighost || (v.kind == VarKind::Field && v.is_odd());
}

int factor_weight(const KTData& kt, const GradedVariable& v) {
  if (v.kind == VarKind::Antifield || v.kind == VarKind::Antighost) return kt.weights.at(v);
  return 1;
}

int weight_of(const KTData& kt, const Poly& p) {
  int w = 0;
  for (const auto& t : p.terms()) {
    int tw = 0;
    for (const auto& [v, e] : t.mono.factors()) tw += factor_weight(kt, p.universe()->var(v)) * static_cast<int>(e);
    w = std::max(w, tw);
  }
  return w;
}

int effective_order(const KTData& kt, const Poly& p) {
  int eff = 0;
  for (VarId id : p.support()) {
    const auto& v = p.universe()->var(id);
    auto it = kt.effective_orders.find(v);
    eff = std::max(eff, it != kt.effective_orders.end() ? it->second : order_of(v.jet));
  }
  return eff;
}

LocalAction with_window(const LocalAction& s, int window) {
  if (s.ring.finite_mode() || window == s.ring.max_jet_order) return s;
  JetRingSpec r = s.ring;
  r.max_jet_order = window;
  return LocalAction::make(r, s.lagrangian);
}

std::pair<Monomial, Monomial> split(const Monomial& m, const Universe& u) {
  std::vector<Monomial::Factor> ring, basis;
  for (const auto& f : m.factors()) (basis_side(u.var(f.first)) ? basis : ring).push_back(f);
  return {Monomial(std::move(ring)), Monomial(std::move(basis))};
}

std::vector<Monomial> basis_monomials(const KTData& kt, int af, int weight_bound) {
  struct Gen {
    VarId id;
    int af, w;
    bool odd;
  };
  std::vector<Gen> gens;
  const auto& u = *kt.universe;
  for (VarId id = 0; id < u.size(); ++id) {
    const auto& v = u.var(id);
    if (!basis_side(v)) continue;
    gens.push_back({id, v.bidegree().antifield_number, factor_weight(kt, v), v.is_odd()});
  }
  std::vector<Monomial> out;
  std::vector<Monomial::Factor> cur;
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t i, int af_left, int w_left) {
    if (i == gens.size()) {
      if (af_left == 0) out.emplace_back(cur);
      return;
    }
    const Gen& g = gens[i];
    int max_e = g.odd ? 1 : (g.af > 0 ? af_left / g.af : 0);
    for (int e = 0; e <= max_e; ++e) {
      if (e * g.af > af_left || e * g.w > w_left) break;
      if (e > 0) cur.emplace_back(g.id, e);
      rec(i + 1, af_left - e * g.af, w_left - e * g.w);
      if (e > 0) cur.pop_back();
    }
  };
  rec(0, af, weight_bound);
  std::sort(out.begin(), out.end(), MonomialGreater());
  return out;
}

FreeModuleMap slice_map(const KTData& kt, const std::vector<Monomial>& src, const std::vector<Monomial>& tgt) {
  const auto& u = kt.universe;
  FreeModuleMap f = FreeModuleMap::zero(u, src.size(), tgt.size());
  std::map<Monomial, std::size_t, MonomialGreater> row;
  for (std::size_t i = 0; i < tgt.size(); ++i) {
    row[tgt[i]] = i;
    f.target_weights[i] = weight_of(kt, Poly::monomial(u, tgt[i]));
  }
  for (std::size_t j = 0; j < src.size(); ++j) {
    f.source_weights[j] = weight_of(kt, Poly::monomial(u, src[j]));
    Poly img = apply_d_kt(kt, Poly::monomial(u, src[j]));
    for (const auto& t : img.terms()) {
      auto [ring, basis] = split(t.mono, *u);
      auto it = row.find(basis);
      if (it == row.end()) throw std::logic_error("differential leaves the enumerated basis");
      f.entries[it->second][j] += Poly::monomial(u, ring, t.coef);
    }
  }
  return f;
}

std::optional<ModuleVector> to_module(const KTData& kt, const Poly& p, const std::vector<Monomial>& basis) {
  std::map<Monomial, std::size_t, MonomialGreater> idx;
  for (std::size_t i = 0; i < basis.size(); ++i) idx[basis[i]] = i;
  ModuleVector v(basis.size(), Poly(kt.universe));
  for (const auto& t : p.terms()) {
    auto [ring, b] = split(t.mono, *kt.universe);
    auto it = idx.find(b);
    if (it == idx.end()) return std::nullopt;
    v[it->second] += Poly::monomial(kt.universe, ring, t.coef);
  }
  return v;
}

Poly from_module(const KTData& kt, const ModuleVector& v, const std::vector<Monomial>& basis) {
  Poly p(kt.universe);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) p += v[i] * Poly::monomial(kt.universe, basis[i]);
  return p;
}

std::vector<VarId> parameter_ids(const Universe& u) {
  std::vector<VarId> out;
  for (VarId id = 0; id < u.size(); ++id)
    if (u.var(id).kind == VarKind::Parameter) out.push_back(id);
  return out;
}

struct LevelResult {
  HomologyResult homology;
  KTSlice slice;
};

LevelResult level_homology(const KTData& kt, int k, int degree_bound) {
  const int extra = 2 * static_cast<int>(parameter_ids(*kt.universe).size());
  LevelResult lr;
  lr.slice = kt_slice(kt, k, degree_bound + extra);
  const auto& basis = lr.slice.basis.at(-k);
  HomologyOptions opt;
  opt.invertible = parameter_ids(*kt.universe);
  if (k == 1) {
    bool plain = std::all_of(basis.begin(), basis.end(), [&](const Monomial& m) {
      return m.degree() == 1 && kt.universe->var(m.factors()[0].first).kind == VarKind::Antifield;
    });
    if (plain) {
      std::vector<Poly> gens;
      for (const auto& b : basis) gens.push_back(kt.images.at(kt.universe->var(b.factors()[0].first)));
      bool even = std::all_of(gens.begin(), gens.end(), is_even_poly);
      if (even && !gens.empty()) opt.candidates = syzygy_module(gens);
    }
  }
  if (!kt.universe->finite_mode()) {
    opt.hook = [&kt, &basis](const ModuleVector& rep) {
      std::vector<ModuleVector> extras;
      Poly r = from_module(kt, rep, basis);
      int room = kt.jet_window - effective_order(kt, r);
      for (const auto& a : multi_indices_up_to(kt.universe->base_dim(), room)) {
        if (order_of(a) == 0) continue;
        auto v = to_module(kt, apply_multi_derivative(a, r), basis);
        if (v) extras.push_back(std::move(*v));
      }
      return extras;
    };
  }
  lr.homology = complex_homology_full(lr.slice.complex, -k, degree_bound, opt);
  return lr;
}

int sign_for(const KTData& kt, const Poly& r, int level, int index, int parity) {
  if (kt.universe->finite_mode()) return sgn(r.leading().coef) < 0 ? -1 : 1;
  std::vector<GradedVariable> ghosts;
  GradedVariable c;
  c.name = ghost_name(level, index);
  c.fiber_index = index;
  c.kind = VarKind::Ghost;
  c.level = level;
  c.intrinsic_parity = parity;
  for (const auto& a : multi_indices_up_to(kt.universe->base_dim(), kt.jet_window)) ghosts.push_back(c.with_jet(a));
  auto tmp = kt.universe->extended(ghosts);
  Poly prod = r.embed(tmp) * Poly::variable(tmp, c.with_jet(MultiIndex(kt.universe->base_dim(), 0)));
  Poly nf = h_normal_form(prod);
  const Poly& ref = nf.is_zero() ? r : nf;
  return sgn(ref.leading().coef) < 0 ? -1 : 1;
}

AntighostGenerator adjoin(KTData& kt, int level, Poly r) {
  if (!apply_d_kt(kt, r).is_zero()) throw std::logic_error("homology representative is not a cycle");
  AntighostGenerator g;
  g.level = level;
  g.index = static_cast<int>(kt.levels.size() >= static_cast<std::size_t>(level) ? kt.levels[level - 1].size() : 0) + 1;
  int par = parity_of(r);
  g.intrinsic_parity = ((par - level) % 2 + 2) % 2;
  if (sign_for(kt, r, level, g.index, g.intrinsic_parity) < 0) r = -r;
  g.effective_order = effective_order(kt, r);
  g.weight = weight_of(kt, r);
  const int n = kt.universe->base_dim();
  std::vector<GradedVariable> vars;
  std::vector<MultiIndex> jets = multi_indices_up_to(n, kt.universe->finite_mode() ? 0 : kt.jet_window - g.effective_order);
  for (const auto& a : jets) vars.push_back(g.variable(n, a));
  kt.adopt(kt.universe->extended(vars));
  r = r.embed(kt.universe);
  for (std::size_t q = 0; q < jets.size(); ++q) {
    Poly img = apply_multi_derivative(jets[q], r);
    kt.images[vars[q]] = img;
    kt.effective_orders[vars[q]] = g.effective_order + order_of(jets[q]);
    kt.weights[vars[q]] = weight_of(kt, img);
  }
  g.image = r;
  if (kt.levels.size() < static_cast<std::size_t>(level)) kt.levels.resize(level);
  kt.levels[level - 1].push_back(g);
  return g;
}

}  // namespace

GradedVariable AntighostGenerator::variable(int base_dim, MultiIndex jet) const {
  GradedVariable v;
  v.name = name();
  v.fiber_index = index;
  v.jet = jet.empty() ? MultiIndex(base_dim, 0) : std::move(jet);
  v.kind = VarKind::Antighost;
  v.level = level;
  v.intrinsic_parity = intrinsic_parity;
  return v;
}

std::vector<GradedVariable> KTData::generators() const {
  std::vector<GradedVariable> out;
  for (const auto& [v, p] : images) out.push_back(v);
  return out;
}

void KTData::adopt(const UniversePtr& u) {
  for (auto& [v, p] : images) p = p.embed(u);
  for (auto& e : euler_lagrange) e = e.embed(u);
  for (auto& lvl : levels)
    for (auto& g : lvl) g.image = g.image.embed(u);
  universe = u;
}

KTData koszul_tate_base(const LocalAction& s0, int jet_window, int degree_bound) {
  KTData kt;
  kt.action = with_window(s0, jet_window);
  const LocalAction& s = kt.action;
  kt.jet_window = s.ring.finite_mode() ? 0 : s.ring.max_jet_order;
  kt.degree_bound = degree_bound;
  kt.euler_lagrange = euler_lagrange_system(s).components;
  std::vector<GradedVariable> vars = s.universe->vars();
  std::vector<std::pair<GradedVariable, std::pair<int, MultiIndex>>> antifields;
  for (int i = 0; i < s.field_count(); ++i) {
    int ord = jet_order(kt.euler_lagrange[i]);
    if (ord > kt.jet_window) continue;
    for (const auto& a : multi_indices_up_to(s.ring.base_dim, kt.jet_window - ord)) {
      GradedVariable v = field_variable(s.ring, i, a);
      v.kind = VarKind::Antifield;
      vars.push_back(v);
      antifields.push_back({v, {i, a}});
    }
  }
  kt.universe = Universe::make(vars, s.ring.base_dim);
  for (auto& e : kt.euler_lagrange) e = e.embed(kt.universe);
  for (const auto& [v, src] : antifields) {
    Poly img = apply_multi_derivative(src.second, kt.euler_lagrange[src.first]);
    kt.images[v] = img;
    kt.effective_orders[v] = order_of(src.second) + jet_order(kt.euler_lagrange[src.first]);
    kt.weights[v] = weight_of(kt, img);
  }
  return kt;
}

Poly apply_d_kt(const KTData& kt, const Poly& e0) {
  if (e0.is_zero()) return Poly(kt.universe);
  Poly e = same_universe(e0.universe(), kt.universe) ? e0 : e0.embed(kt.universe);
  Poly out(kt.universe);
  for (VarId id : e.support()) {
    const auto& v = kt.universe->var(id);
    if (v.kind == VarKind::Ghost) throw std::invalid_argument("d_KT is not defined on ghost " + display_name(v));
    if (v.kind != VarKind::Antifield && v.kind != VarKind::Antighost) continue;
    const Poly& img = kt.images.at(v);
    if (img.is_zero()) continue;
    out += img * graded_derivative(e, id, Side::Left);
  }
  return out;
}

KTSlice kt_slice(const KTData& kt, int k, int basis_weight_bound) {
  KTSlice s;
  s.complex.universe = kt.universe;
  for (int a = std::max(0, k - 1); a <= k + 1; ++a) s.basis[-a] = basis_monomials(kt, a, basis_weight_bound);
  s.complex.maps[-(k + 1)] = slice_map(kt, s.basis.at(-(k + 1)), s.basis.at(-k));
  if (k >= 1) s.complex.maps[-k] = slice_map(kt, s.basis.at(-k), s.basis.at(-(k - 1)));
  return s;
}

std::vector<NoetherIdentity> noether_identities(const LocalAction& s, int order_bound, int degree_bound) {
  KTData kt = koszul_tate_base(s, order_bound, degree_bound);
  LevelResult lr = level_homology(kt, 1, degree_bound);
  const auto& basis = lr.slice.basis.at(-1);
  std::vector<NoetherIdentity> out;
  for (const auto& cls : lr.homology.classes) {
    NoetherIdentity ni;
    ni.representative = from_module(kt, cls.representative, basis);
    for (const auto& b : basis) ni.basis.push_back(kt.universe->var(b.factors()[0].first));
    ni.coefficients = cls.representative;
    ni.degree = cls.degree;
    out.push_back(std::move(ni));
  }
  return out;
}

std::vector<AntighostGenerator> tate_extend(KTData& kt, int level, int degree_bound) {
  std::vector<AntighostGenerator> added;
  for (int round = 1;; ++round) {
    LevelResult lr = level_homology(kt, level, degree_bound);
    LevelCertificate cert;
    cert.level = level;
    cert.degree_bound = degree_bound;
    cert.rounds = round;
    cert.pieces = lr.homology.pieces;
    cert.chain_dimension = lr.homology.chain_dimension;
    if (lr.homology.classes.empty()) {
      cert.vanishes = true;
      kt.certificates.push_back(cert);
      return added;
    }
    if (round == kMaxRounds) {
      kt.certificates.push_back(cert);
      throw InconclusiveError("homology at level " + std::to_string(level) + " did not vanish after " +
                              std::to_string(kMaxRounds) + " rounds");
    }
    std::vector<Poly> reps;
    for (const auto& cls : lr.homology.classes)
      reps.push_back(from_module(kt, cls.representative, lr.slice.basis.at(-level)));
    for (auto& r : reps) added.push_back(adjoin(kt, level, r.embed(kt.universe)));
  }
}

KTData build_koszul_tate(const LocalAction& s, int max_level, int order_bound, int degree_bound) {
  KTData kt = koszul_tate_base(s, order_bound, degree_bound);
  for (int k = 1; k <= max_level; ++k) {
    auto added = tate_extend(kt, k, degree_bound);
    if (added.empty()) {
      kt.terminated_at = k;
      break;
    }
    kt.top_level = k;
  }
  return kt;
}

}  // namespace bvforge
