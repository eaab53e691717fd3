#include "bvforge/groebner.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace bvforge {

// ---------------------------------------------------------------- FreeModuleMap

FreeModuleMap FreeModuleMap::zero(UniversePtr u, std::size_t source_rank, std::size_t target_rank) {
  FreeModuleMap f;
  f.universe = u;
  f.source_rank = source_rank;
  f.target_rank = target_rank;
  f.entries.assign(target_rank, std::vector<Poly>(source_rank, Poly(u)));
  f.source_weights.assign(source_rank, 0);
  f.target_weights.assign(target_rank, 0);
  return f;
}

FreeModuleMap FreeModuleMap::identity(UniversePtr u, std::size_t rank) {
  FreeModuleMap f = zero(u, rank, rank);
  for (std::size_t i = 0; i < rank; ++i) f.entries[i][i] = Poly::constant(u, 1);
  return f;
}

FreeModuleMap FreeModuleMap::from_columns(UniversePtr u, std::size_t target_rank,
                                          const std::vector<ModuleVector>& columns) {
  FreeModuleMap f = zero(u, columns.size(), target_rank);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != target_rank) throw std::invalid_argument("column has the wrong length");
    for (std::size_t i = 0; i < target_rank; ++i) f.entries[i][j] = columns[j][i];
  }
  return f;
}

ModuleVector FreeModuleMap::column(std::size_t col) const {
  ModuleVector v;
  for (std::size_t i = 0; i < target_rank; ++i) v.push_back(entries[i][col]);
  return v;
}

ModuleVector FreeModuleMap::apply(const ModuleVector& v) const {
  if (v.size() != source_rank) throw std::invalid_argument("vector has the wrong length");
  ModuleVector out(target_rank, Poly(universe));
  for (std::size_t i = 0; i < target_rank; ++i)
    for (std::size_t j = 0; j < source_rank; ++j)
      if (!entries[i][j].is_zero() && !v[j].is_zero()) out[i] += entries[i][j] * v[j];
  return out;
}

FreeModuleMap FreeModuleMap::after(const FreeModuleMap& first) const {
  if (first.target_rank != source_rank) throw std::invalid_argument("maps are not composable");
  FreeModuleMap f = zero(universe, first.source_rank, target_rank);
  f.source_weights = first.source_weights;
  f.target_weights = target_weights;
  for (std::size_t j = 0; j < first.source_rank; ++j) {
    ModuleVector c = apply(first.column(j));
    for (std::size_t i = 0; i < target_rank; ++i) f.entries[i][j] = c[i];
  }
  return f;
}

bool FreeModuleMap::is_zero() const {
  for (const auto& row : entries)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

std::size_t ChainComplex::rank_at(int p) const {
  auto it = maps.find(p);
  if (it != maps.end()) return it->second.source_rank;
  auto prev = maps.find(p - 1);
  if (prev != maps.end()) return prev->second.target_rank;
  return 0;
}

std::vector<int> ChainComplex::weights_at(int p) const {
  auto it = maps.find(p);
  if (it != maps.end()) return it->second.source_weights;
  auto prev = maps.find(p - 1);
  if (prev != maps.end()) return prev->second.target_weights;
  return {};
}

void ChainComplex::check() const {
  for (const auto& [p, f] : maps) {
    auto next = maps.find(p + 1);
    if (next == maps.end()) continue;
    if (next->second.source_rank != f.target_rank)
      throw ComplexError("ranks do not match at position " + std::to_string(p + 1), p + 1);
    if (!next->second.after(f).is_zero())
      throw ComplexError("d o d is nonzero at position " + std::to_string(p), p);
  }
}

std::vector<Poly> GroebnerBasis::polys() const {
  std::vector<Poly> out;
  for (const auto& e : elements) out.push_back(e.at(0));
  return out;
}

bool is_even_poly(const Poly& p) {
  if (p.is_zero()) return true;
  for (VarId v : p.support())
    if (p.universe()->is_odd(v)) return false;
  return true;
}

// ---------------------------------------------------------------- engine

namespace {

struct MTerm {
  Monomial m;
  std::uint32_t comp;
  Rational c;
};
using MElem = std::vector<MTerm>;

int top_compare(const Monomial& a, std::uint32_t ca, const Monomial& b, std::uint32_t cb) {
  int c = degrevlex_compare(a, b);
  if (c != 0) return c;
  if (ca != cb) return ca < cb ? 1 : -1;
  return 0;
}

/// a + k * m * b
MElem madd(const MElem& a, const Rational& k, const Monomial& m, const MElem& b) {
  if (b.empty() || is_zero(k)) return a;
  MElem out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  Monomial bm;
  bool have = false;
  while (i < a.size() || j < b.size()) {
    if (j < b.size() && !have) {
      bm = m * b[j].m;
      have = true;
    }
    int c;
    if (j == b.size())
      c = 1;
    else if (i == a.size())
      c = -1;
    else
      c = top_compare(a[i].m, a[i].comp, bm, b[j].comp);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({bm, b[j].comp, k * b[j].c});
      ++j;
      have = false;
    } else {
      Rational s = a[i].c + k * b[j].c;
      if (!is_zero(s)) out.push_back({bm, a[i].comp, s});
      ++i, ++j;
      have = false;
    }
  }
  return out;
}

MElem mscale(MElem a, const Rational& k) {
  for (auto& t : a) t.c *= k;
  return a;
}

MElem to_melem(const ModuleVector& v) {
  MElem out;
  for (std::uint32_t i = 0; i < v.size(); ++i)
    for (const auto& t : v[i].terms()) out.push_back({t.mono, i, t.coef});
  std::sort(out.begin(), out.end(),
            [](const MTerm& a, const MTerm& b) { return top_compare(a.m, a.comp, b.m, b.comp) > 0; });
  return out;
}

ModuleVector from_melem(const MElem& e, std::size_t rank, const UniversePtr& u) {
  std::vector<std::vector<Poly::Term>> parts(rank);
  for (const auto& t : e) parts.at(t.comp).push_back({t.m, t.c});
  ModuleVector out;
  for (auto& p : parts) out.push_back(Poly::from_terms(u, std::move(p)));
  return out;
}

struct Reduction {
  MElem rem;
  MElem quot;  // comp = basis index; sum c*m*g_comp
};

struct Pair {
  std::uint32_t deg;
  std::size_t i, j;
  bool operator<(const Pair& o) const { return std::tie(deg, i, j) < std::tie(o.deg, o.i, o.j); }
};

class Engine {
 public:
  Engine(std::size_t rank, std::size_t inputs, bool track, bool product_criterion)
      : rank_(rank), inputs_(inputs), track_(track), product_(product_criterion) {}

  void run(const std::vector<MElem>& gens) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Reduction r = reduce(gens[k], true, track_);
      MElem rep;
      if (track_) {
        rep = MElem{{Monomial(), static_cast<std::uint32_t>(k), Rational(1)}};
        for (const auto& q : r.quot) rep = madd(rep, -q.c, q.m, A_[q.comp]);
      }
      if (r.rem.empty()) {
        if (track_) direct_.push_back(std::move(rep));
        continue;
      }
      add(std::move(r.rem), std::move(rep));
    }
    while (!pairs_.empty()) {
      Pair p = *pairs_.begin();
      pairs_.erase(pairs_.begin());
      process(p.i, p.j);
    }
  }

  Reduction reduce(MElem f, bool full, bool track) const {
    Reduction r;
    std::size_t pos = 0;
    while (pos < f.size()) {
      const MTerm& t = f[pos];
      std::size_t k = find_reducer(t);
      if (k == npos) {
        if (!full) break;
        ++pos;
        continue;
      }
      Monomial q = G_[k].front().m.quotient_of(t.m);
      Rational c = t.c;  // reducers are monic
      if (track) r.quot.push_back({q, static_cast<std::uint32_t>(k), c});
      f = madd(f, -c, q, G_[k]);
    }
    r.rem = std::move(f);
    return r;
  }

  const std::vector<MElem>& basis() const { return G_; }
  const std::vector<MElem>& reps() const { return A_; }
  const std::vector<MElem>& relations() const { return syz_; }
  const std::vector<MElem>& direct() const { return direct_; }

  std::vector<MElem> reduced_basis() const {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < G_.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < G_.size() && !redundant; ++j) {
        if (i == j || G_[j].front().comp != G_[i].front().comp) continue;
        const auto& li = G_[i].front().m;
        const auto& lj = G_[j].front().m;
        if (lj.divides(li) && (!(lj == li) || j < i)) redundant = true;
      }
      if (!redundant) keep.push_back(i);
    }
    Engine sub(rank_, 0, false, false);
    for (std::size_t i : keep) sub.G_.push_back(G_[i]);
    std::vector<MElem> out;
    for (std::size_t a = 0; a < keep.size(); ++a) {
      MElem g = sub.G_[a];
      MElem tail(g.begin() + 1, g.end());
      Engine others(rank_, 0, false, false);
      for (std::size_t b = 0; b < keep.size(); ++b)
        if (b != a) others.G_.push_back(sub.G_[b]);
      MElem red = others.reduce(tail, true, false).rem;
      MElem full{g.front()};
      full.insert(full.end(), red.begin(), red.end());
      out.push_back(mscale(full, 1 / full.front().c));
    }
    std::sort(out.begin(), out.end(), [](const MElem& a, const MElem& b) {
      return top_compare(a.front().m, a.front().comp, b.front().m, b.front().comp) > 0;
    });
    return out;
  }

  void load(std::vector<MElem> g) { G_ = std::move(g); }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t find_reducer(const MTerm& t) const {
    for (std::size_t k = 0; k < G_.size(); ++k) {
      const MTerm& l = G_[k].front();
      if (l.comp == t.comp && l.m.divides(t.m)) return k;
    }
    return npos;
  }

  void add(MElem h, MElem rep) {
    Rational inv = 1 / h.front().c;
    h = mscale(std::move(h), inv);
    if (track_) rep = mscale(std::move(rep), inv);
    std::size_t t = G_.size();
    G_.push_back(std::move(h));
    A_.push_back(std::move(rep));
    update(t);
  }

  void update(std::size_t t) {
    const MTerm& lt = G_[t].front();
    struct Cand {
      std::size_t i;
      Monomial l;
      bool coprime;
      bool dead = false;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < t; ++i) {
      const MTerm& li = G_[i].front();
      if (li.comp != lt.comp) continue;
      cands.push_back({i, li.m.lcm(lt.m), li.m.coprime(lt.m)});
    }
    // chain criterion on existing pairs
    for (auto it = pairs_.begin(); it != pairs_.end();) {
      const auto& gi = G_[it->i].front().m;
      const auto& gj = G_[it->j].front().m;
      Monomial l = gi.lcm(gj);
      if (lt.comp == G_[it->i].front().comp && lt.m.divides(l) && !(gi.lcm(lt.m) == l) && !(gj.lcm(lt.m) == l))
        it = pairs_.erase(it);
      else
        ++it;
    }
    // criterion M: drop pairs whose lcm is a proper multiple of another new lcm
    for (auto& a : cands)
      for (const auto& b : cands)
        if (&a != &b && b.l.divides(a.l) && !(b.l == a.l)) {
          a.dead = true;
          break;
        }
    // criterion F (and product criterion): one pair per lcm
    std::map<Monomial, std::vector<std::size_t>, MonomialGreater> by_lcm;
    for (std::size_t k = 0; k < cands.size(); ++k)
      if (!cands[k].dead) by_lcm[cands[k].l].push_back(k);
    for (auto& [l, ks] : by_lcm) {
      bool any_coprime = false;
      for (std::size_t k : ks) any_coprime = any_coprime || cands[k].coprime;
      if (product_ && rank_ == 1 && any_coprime) continue;
      const Cand& c = cands[ks.front()];
      pairs_.insert({l.degree(), c.i, t});
    }
  }

  void process(std::size_t i, std::size_t j) {
    const Monomial& li = G_[i].front().m;
    const Monomial& lj = G_[j].front().m;
    Monomial l = li.lcm(lj);
    Monomial ti = li.quotient_of(l), tj = lj.quotient_of(l);
    MElem s = madd(madd(MElem{}, 1, ti, G_[i]), -1, tj, G_[j]);
    Reduction r = reduce(std::move(s), true, track_);
    MElem rel;
    if (track_) {
      rel.push_back({ti, static_cast<std::uint32_t>(i), Rational(1)});
      rel = madd(rel, -1, tj, MElem{{Monomial(), static_cast<std::uint32_t>(j), Rational(1)}});
      for (const auto& q : r.quot)
        rel = madd(rel, -q.c, q.m, MElem{{Monomial(), q.comp, Rational(1)}});
    }
    if (r.rem.empty()) {
      if (track_) syz_.push_back(std::move(rel));
      return;
    }
    MElem rep;
    if (track_) {
      rep = madd(MElem{}, 1, ti, A_[i]);
      rep = madd(rep, -1, tj, A_[j]);
      for (const auto& q : r.quot) rep = madd(rep, -q.c, q.m, A_[q.comp]);
      Rational lc = r.rem.front().c;
      rel = madd(rel, -lc, Monomial(), MElem{{Monomial(), static_cast<std::uint32_t>(G_.size()), Rational(1)}});
      syz_.push_back(std::move(rel));
    }
    add(std::move(r.rem), std::move(rep));
  }

  std::size_t rank_, inputs_;
  bool track_, product_;
  std::vector<MElem> G_, A_, syz_, direct_;
  std::set<Pair> pairs_;
};

void require_even(const ModuleVector& v) {
  for (const auto& p : v)
    if (!is_even_poly(p)) throw std::invalid_argument("Groebner input contains odd variables");
}

UniversePtr universe_of(const std::vector<ModuleVector>& gens, const UniversePtr& fallback) {
  for (const auto& g : gens)
    for (const auto& p : g)
      if (p.universe()) return p.universe();
  return fallback;
}

std::uint32_t module_degree(const ModuleVector& v, const std::vector<std::uint32_t>& shifts) {
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) d = std::max(d, v[i].total_degree() + shifts[i]);
  return d;
}

}  // namespace

GroebnerBasis module_groebner(const std::vector<ModuleVector>& gens, std::size_t rank, const UniversePtr& u) {
  std::vector<MElem> in;
  for (const auto& g : gens) {
    if (g.size() != rank) throw std::invalid_argument("generator has the wrong rank");
    require_even(g);
    in.push_back(to_melem(g));
  }
  Engine e(rank, gens.size(), false, true);
  e.run(in);
  GroebnerBasis gb;
  gb.universe = universe_of(gens, u);
  gb.rank = rank;
  for (const auto& m : e.reduced_basis()) gb.elements.push_back(from_melem(m, rank, gb.universe));
  return gb;
}

GroebnerBasis buchberger(const std::vector<Poly>& gens, MonomialOrder) {
  std::vector<ModuleVector> v;
  UniversePtr u;
  for (const auto& g : gens) {
    v.push_back({g});
    if (g.universe()) u = g.universe();
  }
  return module_groebner(v, 1, u);
}

ModuleVector normal_form(const ModuleVector& v, const GroebnerBasis& g) {
  require_even(v);
  Engine e(g.rank, 0, false, false);
  std::vector<MElem> basis;
  for (const auto& el : g.elements) basis.push_back(to_melem(el));
  e.load(std::move(basis));
  UniversePtr u = g.universe;
  for (const auto& p : v)
    if (p.universe()) u = p.universe();
  return from_melem(e.reduce(to_melem(v), true, false).rem, g.rank, u);
}

Poly normal_form(const Poly& p, const GroebnerBasis& g) { return normal_form(ModuleVector{p}, g).at(0); }

bool ideal_contains(const GroebnerBasis& g, const Poly& p) { return normal_form(p, g).is_zero(); }

bool module_contains(const GroebnerBasis& g, const ModuleVector& v) {
  for (const auto& p : normal_form(v, g))
    if (!p.is_zero()) return false;
  return true;
}

ModuleVector normalize_vector(ModuleVector v) {
  Integer den = 1, num = 0;
  bool any = false;
  for (const auto& p : v)
    for (const auto& t : p.terms()) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coef.get_den_mpz_t());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coef.get_num_mpz_t());
      any = true;
    }
  if (!any) return v;
  Rational scale(den, num);
  scale.canonicalize();
  for (const auto& p : v)
    if (!p.is_zero()) {
      if (sgn(p.leading().coef) < 0) scale = -scale;
      break;
    }
  for (auto& p : v) p = p.scaled(scale);
  return v;
}

std::vector<ModuleVector> module_syzygies(const std::vector<ModuleVector>& gens, std::size_t rank,
                                          const UniversePtr& u) {
  std::vector<MElem> in;
  std::vector<std::uint32_t> shifts;
  for (const auto& g : gens) {
    if (g.size() != rank) throw std::invalid_argument("generator has the wrong rank");
    require_even(g);
    in.push_back(to_melem(g));
    shifts.push_back(module_degree(g, std::vector<std::uint32_t>(rank, 0)));
  }
  UniversePtr uu = universe_of(gens, u);
  const std::size_t n = gens.size();
  Engine e(rank, n, true, false);
  e.run(in);
  std::vector<ModuleVector> cands;
  for (const auto& d : e.direct()) cands.push_back(from_melem(d, n, uu));
  for (const auto& rel : e.relations()) {
    MElem s;
    for (const auto& t : rel) s = madd(s, t.c, t.m, e.reps()[t.comp]);
    cands.push_back(from_melem(s, n, uu));
  }
  std::vector<std::pair<std::uint32_t, std::size_t>> order;
  for (std::size_t k = 0; k < cands.size(); ++k) order.emplace_back(module_degree(cands[k], shifts), k);
  std::stable_sort(order.begin(), order.end());
  std::vector<ModuleVector> kept;
  GroebnerBasis gb;
  gb.universe = uu;
  gb.rank = n;
  for (const auto& [deg, k] : order) {
    const auto& c = cands[k];
    bool zero = std::all_of(c.begin(), c.end(), [](const Poly& p) { return p.is_zero(); });
    if (zero) continue;
    if (!kept.empty() && module_contains(gb, c)) continue;
    kept.push_back(normalize_vector(c));
    gb = module_groebner(kept, n, uu);
  }
  return kept;
}

std::vector<ModuleVector> syzygy_module(const std::vector<Poly>& gens) {
  std::vector<ModuleVector> v;
  UniversePtr u;
  for (const auto& g : gens) {
    v.push_back({g});
    if (g.universe()) u = g.universe();
  }
  return module_syzygies(v, 1, u);
}

namespace {

// Splits every term into its even part and its odd part (a sub-monomial
// in canonical order); since even variables commute with everything the
// product of the two parts reproduces the term without a sign.
std::pair<Monomial, Monomial> split_odd(const Monomial& m, const std::vector<bool>& odd) {
  std::vector<Monomial::Factor> ev, od;
  for (const auto& f : m.factors()) (odd[f.first] ? od : ev).push_back(f);
  return {Monomial(std::move(ev)), Monomial(std::move(od))};
}

}  // namespace

std::vector<ModuleVector> module_kernel(const FreeModuleMap& f) {
  const auto& u = f.universe;
  std::vector<VarId> odd_vars;
  for (const auto& row : f.entries)
    for (const auto& e : row)
      for (VarId v : e.support())
        if (u->is_odd(v)) odd_vars.push_back(v);
  std::sort(odd_vars.begin(), odd_vars.end());
  odd_vars.erase(std::unique(odd_vars.begin(), odd_vars.end()), odd_vars.end());
  std::vector<ModuleVector> cols;
  for (std::size_t j = 0; j < f.source_rank; ++j) cols.push_back(f.column(j));
  if (odd_vars.empty()) {
    if (f.source_rank == 0) return {};
    return module_syzygies(cols, f.target_rank, u);
  }
  if (odd_vars.size() > 12) throw std::invalid_argument("too many odd variables for exterior splitting");
  const auto& odd = u->odd_mask();
  std::vector<Monomial> ext;
  for (std::uint32_t mask = 0; mask < (1u << odd_vars.size()); ++mask) {
    std::vector<Monomial::Factor> fs;
    for (std::size_t b = 0; b < odd_vars.size(); ++b)
      if (mask & (1u << b)) fs.emplace_back(odd_vars[b], 1);
    ext.emplace_back(std::move(fs));
  }
  std::sort(ext.begin(), ext.end(), MonomialGreater());
  std::map<Monomial, std::size_t, MonomialGreater> ext_index;
  for (std::size_t k = 0; k < ext.size(); ++k) ext_index[ext[k]] = k;
  const std::size_t big_rank = f.target_rank * ext.size();
  std::vector<ModuleVector> split_cols;
  std::vector<std::pair<std::size_t, std::size_t>> origin;
  for (std::size_t j = 0; j < f.source_rank; ++j) {
    for (std::size_t k = 0; k < ext.size(); ++k) {
      ModuleVector img = cols[j];
      Poly lam = Poly::monomial(u, ext[k]);
      ModuleVector big(big_rank, Poly(u));
      for (std::size_t i = 0; i < f.target_rank; ++i) {
        Poly prod = lam * img[i];
        for (const auto& t : prod.terms()) {
          auto [ev, od] = split_odd(t.mono, odd);
          big[i * ext.size() + ext_index.at(od)] += Poly::monomial(u, ev, t.coef);
        }
      }
      split_cols.push_back(std::move(big));
      origin.emplace_back(j, k);
    }
  }
  std::vector<ModuleVector> out;
  for (const auto& s : module_syzygies(split_cols, big_rank, u)) {
    ModuleVector v(f.source_rank, Poly(u));
    for (std::size_t c = 0; c < s.size(); ++c) {
      if (s[c].is_zero()) continue;
      auto [j, k] = origin[c];
      v[j] += Poly::monomial(u, ext[k]) * s[c];
    }
    out.push_back(normalize_vector(std::move(v)));
  }
  return out;
}

}  // namespace bvforge
