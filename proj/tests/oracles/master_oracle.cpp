#include "master_oracle.hpp"

#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace oracle {

using bvforge::GradedVariable;
using bvforge::Monomial;
using bvforge::MultiIndex;
using bvforge::Poly;
using bvforge::Universe;
using bvforge::VarId;
using bvforge::VarKind;

namespace {

struct ByFactors {
  bool operator()(const Monomial& a, const Monomial& b) const { return a.factors() < b.factors(); }
};

struct Ordered {
  mpq_class coef;
  std::vector<VarId> seq;
};

Poly product(const bvforge::UniversePtr& u, const std::vector<VarId>& seq, const mpq_class& c) {
  Poly p = Poly::constant(u, c);
  for (VarId v : seq) p = p * Poly::variable(u, v);
  return p;
}

std::vector<Ordered> ordered_terms(const Poly& p) {
  std::vector<Ordered> out;
  for (const auto& t : p.terms()) {
    Ordered o;
    for (const auto& [v, e] : t.mono.factors())
      for (std::uint32_t k = 0; k < e; ++k) o.seq.push_back(v);
    Poly probe = product(p.universe(), o.seq, 1);
    o.coef = t.coef / probe.terms().front().coef;
    out.push_back(std::move(o));
  }
  return out;
}

int var_parity(const Universe& u, VarId v) { return u.var(v).parity(); }

Poly partial(const Poly& p, VarId v, bool left) {
  const auto& u = *p.universe();
  Poly out(p.universe());
  for (const auto& o : ordered_terms(p)) {
    for (std::size_t k = 0; k < o.seq.size(); ++k) {
      if (o.seq[k] != v) continue;
      int passed = 0;
      for (std::size_t j = 0; j < o.seq.size(); ++j)
        if (left ? j < k : j > k) passed += var_parity(u, o.seq[j]);
      int s = (var_parity(u, v) * passed) % 2 ? -1 : 1;
      auto rest = o.seq;
      rest.erase(rest.begin() + static_cast<long>(k));
      out += product(p.universe(), rest, o.coef * s);
    }
  }
  return out;
}

std::tuple<std::string, int, int, int, int> family(const GradedVariable& v) {
  return {v.name, static_cast<int>(v.kind), v.fiber_index, v.level, v.intrinsic_parity};
}

Poly derivative_of_variable(const bvforge::UniversePtr& u, VarId id, int i) {
  const auto& v = u->var(id);
  if (v.kind == VarKind::Parameter) return Poly(u);
  if (v.kind == VarKind::Coordinate) return v.fiber_index == i ? Poly::constant(u, 1) : Poly(u);
  MultiIndex j = v.jet;
  ++j.at(static_cast<std::size_t>(i));
  auto next = u->find(v.with_jet(j));
  if (!next) throw std::out_of_range("oracle: derivative leaves the jet window");
  return Poly::variable(u, *next);
}

}  // namespace

Poly total_derivative(int i, const Poly& p) {
  const auto& u = p.universe();
  Poly out(u);
  for (const auto& o : ordered_terms(p)) {
    for (std::size_t k = 0; k < o.seq.size(); ++k) {
      Poly t = Poly::constant(u, o.coef);
      for (std::size_t j = 0; j < o.seq.size(); ++j)
        t = t * (j == k ? derivative_of_variable(u, o.seq[j], i) : Poly::variable(u, o.seq[j]));
      out += t;
    }
  }
  return out;
}

namespace {

Poly variational(const Poly& p, const GradedVariable& base, bool left) {
  const auto& u = p.universe();
  Poly out(u);
  for (VarId id = 0; id < u->size(); ++id) {
    const auto& v = u->var(id);
    if (family(v) != family(base)) continue;
    Poly d = partial(p, id, left);
    int order = 0;
    for (std::size_t i = 0; i < v.jet.size(); ++i)
      for (int k = 0; k < v.jet[i]; ++k) {
        d = total_derivative(static_cast<int>(i), d);
        ++order;
      }
    out += order % 2 ? -d : d;
  }
  return out;
}

}  // namespace

Poly local_bracket(const Poly& f, const Poly& g) {
  const auto& u = f.universe();
  Poly out(u);
  for (VarId id = 0; id < u->size(); ++id) {
    const auto& v = u->var(id);
    if (!v.is_base() || (v.kind != VarKind::Field && v.kind != VarKind::Ghost)) continue;
    GradedVariable dual = v;
    dual.kind = v.kind == VarKind::Field ? VarKind::Antifield : VarKind::Antighost;
    if (!u->find(dual)) continue;
    out += variational(f, v, false) * variational(g, dual, true);
    out -= variational(f, dual, false) * variational(g, v, true);
  }
  return out;
}

namespace {

using Content = std::vector<std::tuple<std::string, int, int, int, int>>;

struct Group {
  Content content;
  MultiIndex jets;
  bool operator<(const Group& o) const { return std::tie(content, jets) < std::tie(o.content, o.jets); }
};

Group group_of(const Monomial& m, const Universe& u) {
  Group g;
  g.jets = MultiIndex(static_cast<std::size_t>(u.base_dim()), 0);
  for (const auto& [v, e] : m.factors()) {
    const auto& var = u.var(v);
    for (std::uint32_t k = 0; k < e; ++k) {
      g.content.push_back(family(var));
      for (std::size_t i = 0; i < var.jet.size(); ++i) g.jets[i] += var.jet[i];
    }
  }
  std::sort(g.content.begin(), g.content.end());
  return g;
}

std::vector<MultiIndex> splits_for(const MultiIndex& total, std::size_t slots) {
  std::vector<MultiIndex> out;
  MultiIndex cur(total.size() * slots, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == cur.size()) {
      out.push_back(cur);
      return;
    }
    std::size_t dir = pos % total.size(), slot = pos / total.size();
    int used = 0;
    for (std::size_t s = 0; s < slot; ++s) used += cur[s * total.size() + dir];
    int left = total[dir] - used;
    if (slot + 1 == slots) {
      cur[pos] = left;
      rec(pos + 1);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      cur[pos] = a;
      rec(pos + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<Poly> candidates(const Group& g, const MultiIndex& jets, const bvforge::UniversePtr& u) {
  std::map<decltype(family(GradedVariable{})), GradedVariable> reps;
  for (VarId id = 0; id < u->size(); ++id) reps.emplace(family(u->var(id)), u->var(id));
  std::set<Monomial, ByFactors> seen;
  std::vector<Poly> out;
  const std::size_t n = jets.size(), slots = g.content.size();
  for (const auto& split : splits_for(jets, slots)) {
    Poly p = Poly::constant(u, 1);
    bool ok = true;
    for (std::size_t s = 0; s < slots && ok; ++s) {
      MultiIndex a(split.begin() + static_cast<long>(s * n), split.begin() + static_cast<long>((s + 1) * n));
      auto id = u->find(reps.at(g.content[s]).with_jet(a));
      if (!id) ok = false;
      else p = p * Poly::variable(u, *id);
    }
    if (!ok || p.is_zero()) continue;
    Monomial m = p.terms().front().mono;
    if (seen.insert(m).second) out.push_back(Poly::monomial(u, m, 1));
  }
  return out;
}

std::vector<std::size_t> rref(std::vector<std::vector<mpq_class>>& a, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    mpq_class inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (std::size_t j = c; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

DivergenceCheck solve_divergence(const Poly& r) {
  const auto& u = r.universe();
  const int n = u->base_dim();
  DivergenceCheck out;
  out.witness.assign(static_cast<std::size_t>(n), Poly(u));
  std::map<Group, Poly> groups;
  for (const auto& t : r.terms()) {
    auto [it, fresh] = groups.try_emplace(group_of(t.mono, *u), Poly(u));
    it->second += Poly::monomial(u, t.mono, t.coef);
  }
  for (const auto& [g, target] : groups) {
    std::vector<std::pair<int, Poly>> unknowns;
    for (int i = 0; i < n; ++i) {
      if (g.jets[static_cast<std::size_t>(i)] == 0) continue;
      MultiIndex lower = g.jets;
      --lower[static_cast<std::size_t>(i)];
      for (auto& m : candidates(g, lower, u)) unknowns.emplace_back(i, m);
    }
    if (unknowns.empty()) return out;
    std::map<Monomial, std::size_t, ByFactors> rows;
    std::vector<Poly> images;
    for (const auto& [i, m] : unknowns) {
      images.push_back(total_derivative(i, m));
      for (const auto& t : images.back().terms()) rows.emplace(t.mono, rows.size());
    }
    for (const auto& t : target.terms()) rows.emplace(t.mono, rows.size());
    const std::size_t nc = unknowns.size();
    std::vector<std::vector<mpq_class>> a(rows.size(), std::vector<mpq_class>(nc + 1));
    for (std::size_t c = 0; c < nc; ++c)
      for (const auto& t : images[c].terms()) a[rows.at(t.mono)][c] = t.coef;
    for (const auto& t : target.terms()) a[rows.at(t.mono)][nc] = t.coef;
    auto pivots = rref(a, nc + 1);
    if (!pivots.empty() && pivots.back() == nc) return out;
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      const auto& [i, m] = unknowns[pivots[k]];
      out.witness[static_cast<std::size_t>(i)] += m.scaled(a[k][nc]);
    }
  }
  out.divergence = true;
  return out;
}

}  // namespace oracle
