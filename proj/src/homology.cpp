#include "bvforge/homology.hpp"

#include <algorithm>
#include <map>

#include "bvforge/linalg.hpp"

namespace bvforge {

namespace {

using Grade = std::vector<std::int64_t>;

struct Elem {
  Monomial m;
  std::uint32_t j;
};

struct ElemLess {
  bool operator()(const Elem& a, const Elem& b) const {
    if (a.j != b.j) return a.j < b.j;
    return degrevlex_compare(a.m, b.m) > 0;
  }
};

using ElemVec = std::vector<std::pair<Elem, Rational>>;

struct Piece {
  std::vector<Elem> elems;
  std::map<Elem, std::uint32_t, ElemLess> index;
  std::vector<Elem> prev;
  int min_degree = 0;
  bool built = false;
  EchelonBasis killed;  // boundaries, multiples of representatives, torsion
  std::vector<SparseVec> pending_u;
  std::size_t consumed_u = 0;
  std::vector<SparseVec> pending_z;
};

std::vector<SparseVec> rref(std::vector<SparseVec> rows) {
  std::vector<SparseVec> out;
  for (auto& r : rows) {
    for (const auto& o : out) {
      auto it = std::find_if(r.begin(), r.end(), [&](const auto& e) { return e.first == o.front().first; });
      if (it != r.end()) r = axpy(r, -it->second, o);
    }
    if (r.empty()) continue;
    Rational inv = 1 / r.front().second;
    for (auto& e : r) e.second *= inv;
    for (auto& o : out) {
      auto it = std::find_if(o.begin(), o.end(), [&](const auto& e) { return e.first == r.front().first; });
      if (it != o.end()) o = axpy(o, -it->second, r);
    }
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const SparseVec& a, const SparseVec& b) { return a.front().first < b.front().first; });
  return out;
}

class Solver {
 public:
  Solver(const ChainComplex& c, int p, int d, const HomologyOptions& opt) : c_(c), p_(p), d_(d), opt_(opt) {
    u_ = c.universe;
    auto it = c.maps.find(p - 1);
    prev_ = it == c.maps.end() ? nullptr : &it->second;
    it = c.maps.find(p);
    next_ = it == c.maps.end() ? nullptr : &it->second;
    n_cur_ = c.rank_at(p);
    w_cur_ = c.weights_at(p);
    w_cur_.resize(n_cur_, 0);
    if (prev_) {
      w_prev_ = prev_->source_weights;
      w_prev_.resize(prev_->source_rank, 0);
    }
    if (next_) {
      w_next_ = next_->target_weights;
      w_next_.resize(next_->target_rank, 0);
    }
  }

  HomologyResult run() {
    HomologyResult res;
    if (n_cur_ == 0) return res;
    collect_active();
    build_lattice();
    dmax_ = d_;
    if (!param_.is_one()) dmax_ += opt_.torsion_power * static_cast<int>(param_.degree());
    enumerate_monomials();
    enumerate_elements();
    if (opt_.candidates) seed_candidates();
    std::vector<const Grade*> order;
    for (auto& [g, pc] : pieces_)
      if (pc.min_degree <= d_) order.push_back(&g);
    std::stable_sort(order.begin(), order.end(),
                     [&](const Grade* a, const Grade* b) { return pieces_.at(*a).min_degree < pieces_.at(*b).min_degree; });
    res.pieces = order.size();
    for (const Grade* g : order) {
      for (const auto& e : pieces_.at(*g).elems)
        if (degree_of(e) <= d_) ++res.chain_dimension;
      process(*g, res);
    }
    return res;
  }

 private:
  int degree_of(const Elem& e) const { return static_cast<int>(e.m.degree()) + w_cur_[e.j]; }

  void for_each_entry(const FreeModuleMap* f, const std::function<void(std::size_t, std::size_t, const Poly&)>& fn) {
    if (!f) return;
    for (std::size_t i = 0; i < f->target_rank; ++i)
      for (std::size_t j = 0; j < f->source_rank; ++j)
        if (!f->entries[i][j].is_zero()) fn(i, j, f->entries[i][j]);
  }

  void collect_active() {
    std::vector<VarId> vs;
    auto add = [&](const Poly& p) {
      if (!is_even_poly(p)) throw std::invalid_argument("complex entries must be even");
      for (VarId v : p.support()) vs.push_back(v);
    };
    for_each_entry(prev_, [&](std::size_t, std::size_t, const Poly& p) { add(p); });
    for_each_entry(next_, [&](std::size_t, std::size_t, const Poly& p) { add(p); });
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    active_ = vs;
    for (std::size_t k = 0; k < active_.size(); ++k) active_index_[active_[k]] = k;
    std::vector<Monomial::Factor> pf;
    for (VarId v : opt_.invertible)
      if (active_index_.count(v)) pf.emplace_back(v, 1);
    param_ = Monomial(pf);
  }

  // Unknowns: one weight per active variable, then per basis vector at
  // p-1, p, p+1. Each term of each entry forces source = target + monomial.
  void build_lattice() {
    const std::size_t na = active_.size();
    const std::size_t np = prev_ ? prev_->source_rank : 0;
    const std::size_t nn = next_ ? next_->target_rank : 0;
    const std::size_t off_prev = na, off_cur = na + np, off_next = na + np + n_cur_;
    const std::size_t unknowns = off_next + nn;
    std::map<SparseVec, int> rows_seen;
    std::vector<SparseVec> rows;
    auto constrain = [&](std::size_t src, std::size_t tgt, const Monomial& m) {
      std::map<std::uint32_t, Rational> r;
      r[static_cast<std::uint32_t>(src)] += 1;
      r[static_cast<std::uint32_t>(tgt)] -= 1;
      for (const auto& [v, e] : m.factors()) r[static_cast<std::uint32_t>(active_index_.at(v))] -= e;
      SparseVec sv;
      for (auto& [k, x] : r)
        if (!is_zero(x)) sv.emplace_back(k, x);
      if (rows_seen.emplace(sv, 0).second) rows.push_back(std::move(sv));
    };
    for_each_entry(prev_, [&](std::size_t i, std::size_t j, const Poly& p) {
      for (const auto& t : p.terms()) constrain(off_prev + j, off_cur + i, t.mono);
    });
    for_each_entry(next_, [&](std::size_t i, std::size_t j, const Poly& p) {
      for (const auto& t : p.terms()) constrain(off_cur + j, off_next + i, t.mono);
    });
    std::vector<SparseVec> cols(unknowns);
    for (std::uint32_t r = 0; r < rows.size(); ++r)
      for (const auto& [k, x] : rows[r]) cols[k].emplace_back(r, x);
    auto null = nullspace_columns(cols);
    const std::size_t rank = null.size();
    var_grade_.assign(na, Grade(rank, 0));
    prev_grade_.assign(np, Grade(rank, 0));
    cur_grade_.assign(n_cur_, Grade(rank, 0));
    for (std::size_t s = 0; s < rank; ++s) {
      Integer den = 1;
      for (const auto& [k, x] : null[s]) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
      for (const auto& [k, x] : null[s]) {
        Rational y = x * den;
        std::int64_t val = y.get_num().get_si();
        if (k < off_prev)
          var_grade_[k][s] = val;
        else if (k < off_cur)
          prev_grade_[k - off_prev][s] = val;
        else if (k < off_next)
          cur_grade_[k - off_cur][s] = val;
      }
    }
  }

  Grade grade_of(const Monomial& m) const {
    Grade g(cur_grade_.empty() ? var_grade_.empty() ? 0 : var_grade_[0].size() : cur_grade_[0].size(), 0);
    for (const auto& [v, e] : m.factors()) {
      const Grade& vg = var_grade_[active_index_.at(v)];
      for (std::size_t s = 0; s < g.size(); ++s) g[s] += vg[s] * e;
    }
    return g;
  }

  static Grade plus(Grade a, const Grade& b) {
    for (std::size_t s = 0; s < a.size(); ++s) a[s] += b[s];
    return a;
  }

  void enumerate_monomials() {
    monos_.push_back(Monomial());
    std::size_t begin = 0;
    for (int deg = 1; deg <= dmax_; ++deg) {
      std::size_t end = monos_.size();
      for (std::size_t k = begin; k < end; ++k) {
        // extend by variables not smaller than the largest factor, avoiding repeats
        const Monomial m = monos_[k];
        std::size_t start = m.is_one() ? 0 : active_index_.at(m.factors().back().first);
        for (std::size_t a = start; a < active_.size(); ++a) monos_.push_back(m * Monomial::variable(active_[a]));
      }
      begin = end;
    }
    for (const auto& m : monos_) mono_grade_.push_back(grade_of(m));
  }

  void enumerate_elements() {
    for (std::uint32_t j = 0; j < n_cur_; ++j) {
      for (std::size_t k = 0; k < monos_.size(); ++k) {
        const Monomial& m = monos_[k];
        if (static_cast<int>(m.degree()) + w_cur_[j] > dmax_) break;
        Piece& pc = pieces_[plus(mono_grade_[k], cur_grade_[j])];
        int deg = static_cast<int>(m.degree()) + w_cur_[j];
        if (pc.elems.empty() || deg < pc.min_degree) pc.min_degree = deg;
        pc.elems.push_back({m, j});
      }
    }
    for (auto& [g, pc] : pieces_) {
      std::sort(pc.elems.begin(), pc.elems.end(), ElemLess());
      for (std::uint32_t k = 0; k < pc.elems.size(); ++k) pc.index.emplace(pc.elems[k], k);
    }
    if (prev_) {
      for (std::uint32_t j = 0; j < prev_->source_rank; ++j) {
        for (std::size_t k = 0; k < monos_.size(); ++k) {
          const Monomial& m = monos_[k];
          if (static_cast<int>(m.degree()) + w_prev_[j] > dmax_) break;
          auto it = pieces_.find(plus(mono_grade_[k], prev_grade_[j]));
          if (it != pieces_.end()) it->second.prev.push_back({m, j});
        }
      }
    }
  }

  // Elements of a cycle given as a module vector; nullopt if a variable is
  // not active.
  std::optional<ElemVec> elements_of(const ModuleVector& v) const {
    ElemVec out;
    for (std::uint32_t j = 0; j < v.size(); ++j)
      for (const auto& t : v[j].terms()) {
        for (const auto& f : t.mono.factors())
          if (!active_index_.count(f.first)) return std::nullopt;
        out.push_back({{t.mono, j}, t.coef});
      }
    return out;
  }

  Grade elem_grade(const Elem& e) const { return plus(grade_of(e.m), cur_grade_[e.j]); }

  // Sparse vector of m * (element combination) in its piece; nullopt if some
  // element is outside the enumerated range.
  std::optional<std::pair<Grade, SparseVec>> place(const ElemVec& v, const Monomial& m) {
    if (v.empty()) return std::nullopt;
    Grade g = plus(elem_grade(v.front().first), grade_of(m));
    auto it = pieces_.find(g);
    if (it == pieces_.end()) return std::nullopt;
    SparseVec sv;
    for (const auto& [e, c] : v) {
      auto jt = it->second.index.find(Elem{m * e.m, e.j});
      if (jt == it->second.index.end()) return std::nullopt;
      sv.emplace_back(jt->second, c);
    }
    std::sort(sv.begin(), sv.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return std::make_pair(g, sv);
  }

  std::vector<ElemVec> homogeneous_parts(const ElemVec& v) const {
    std::map<Grade, ElemVec> parts;
    for (const auto& ec : v) parts[elem_grade(ec.first)].push_back(ec);
    std::vector<ElemVec> out;
    for (auto& [g, p] : parts) out.push_back(std::move(p));
    return out;
  }

  int max_degree(const ElemVec& v) const {
    int d = 0;
    for (const auto& [e, c] : v) d = std::max(d, degree_of(e));
    return d;
  }

  void seed_candidates() {
    for (const auto& cand : *opt_.candidates) {
      auto ev = elements_of(cand);
      if (!ev) continue;
      for (const auto& part : homogeneous_parts(*ev)) {
        int base = max_degree(part);
        for (const auto& m : monos_) {
          if (base + static_cast<int>(m.degree()) > d_) break;
          auto placed = place(part, m);
          if (placed) pieces_.at(placed->first).pending_z.push_back(std::move(placed->second));
        }
      }
    }
  }

  // Boundaries of the piece, on demand.
  void build(Piece& pc) {
    if (pc.built) return;
    pc.built = true;
    if (!prev_) return;
    std::vector<Elem> extra;
    for (std::uint32_t tag = 0; tag < pc.prev.size(); ++tag) {
      const Elem& src = pc.prev[tag];
      std::map<std::uint32_t, Rational> acc;
      for (std::size_t i = 0; i < prev_->target_rank; ++i) {
        const Poly& e = prev_->entries[i][src.j];
        for (const auto& t : e.terms()) {
          Elem tgt{src.m * t.mono, static_cast<std::uint32_t>(i)};
          auto it = pc.index.find(tgt);
          std::uint32_t col;
          if (it == pc.index.end()) {
            col = static_cast<std::uint32_t>(pc.elems.size());
            pc.elems.push_back(tgt);
            pc.index.emplace(tgt, col);
          } else {
            col = it->second;
          }
          acc[col] += t.coef;
        }
      }
      SparseVec sv;
      for (auto& [k, x] : acc)
        if (!is_zero(x)) sv.emplace_back(k, x);
      pc.killed.insert(std::move(sv), tag);
    }
  }

  void absorb_pending(Piece& pc) {
    build(pc);
    for (; pc.consumed_u < pc.pending_u.size(); ++pc.consumed_u) pc.killed.insert(pc.pending_u[pc.consumed_u], 0);
  }

  std::vector<SparseVec> kernel(Piece& pc) {
    std::vector<std::uint32_t> cols;
    for (std::uint32_t k = 0; k < pc.elems.size(); ++k)
      if (k < pc.index.size() && degree_of(pc.elems[k]) <= d_) cols.push_back(k);
    std::vector<SparseVec> images;
    std::map<Elem, std::uint32_t, ElemLess> next_index;
    for (std::uint32_t k : cols) {
      const Elem& src = pc.elems[k];
      std::map<std::uint32_t, Rational> acc;
      if (next_) {
        for (std::size_t i = 0; i < next_->target_rank; ++i) {
          const Poly& e = next_->entries[i][src.j];
          for (const auto& t : e.terms()) {
            Elem tgt{src.m * t.mono, static_cast<std::uint32_t>(i)};
            auto [it, ins] = next_index.emplace(tgt, static_cast<std::uint32_t>(next_index.size()));
            acc[it->second] += t.coef;
          }
        }
      }
      SparseVec sv;
      for (auto& [kk, x] : acc)
        if (!is_zero(x)) sv.emplace_back(kk, x);
      images.push_back(std::move(sv));
    }
    std::vector<SparseVec> out;
    for (const auto& z : nullspace_columns(images)) {
      SparseVec sv;
      for (const auto& [k, x] : z) sv.emplace_back(cols[k], x);
      out.push_back(std::move(sv));
    }
    return out;
  }

  void remove_torsion(const Grade& g, Piece& pc, std::vector<SparseVec>& quotient) {
    if (param_.is_one() || quotient.empty()) return;
    Monomial pj;
    for (int k = 0; k < opt_.torsion_power; ++k) pj = pj * param_;
    std::vector<SparseVec> images;
    for (const auto& q : quotient) {
      ElemVec ev;
      for (const auto& [k, x] : q) ev.push_back({pc.elems[k], x});
      auto placed = place(ev, pj);
      if (!placed) return;
      Piece& target = pieces_.at(placed->first);
      absorb_pending(target);
      images.push_back(target.killed.remainder(placed->second));
    }
    (void)g;
    for (const auto& combo : nullspace_columns(images)) {
      SparseVec t;
      for (const auto& [k, x] : combo) t = axpy(t, x, quotient[k]);
      pc.killed.insert(std::move(t), 0);
    }
  }

  void add_multiples(const ElemVec& v) {
    int base = max_degree(v);
    for (const auto& m : monos_) {
      if (m.is_one()) continue;
      if (base + static_cast<int>(m.degree()) > dmax_) break;
      auto placed = place(v, m);
      if (placed) pieces_.at(placed->first).pending_u.push_back(std::move(placed->second));
    }
  }

  void process(const Grade& g, HomologyResult& res) {
    Piece& pc = pieces_.at(g);
    absorb_pending(pc);
    std::vector<SparseVec> z = opt_.candidates ? pc.pending_z : kernel(pc);
    std::vector<SparseVec> quotient;
    {
      EchelonBasis q;
      for (auto& v : z) {
        SparseVec r = pc.killed.remainder(v);
        if (!r.empty() && q.insert(r, 0)) quotient.push_back(std::move(r));
      }
    }
    remove_torsion(g, pc, quotient);
    std::vector<SparseVec> rem;
    for (const auto& q : quotient) {
      SparseVec r = pc.killed.remainder(q);
      if (!r.empty()) rem.push_back(std::move(r));
    }
    for (auto& row : rref(std::move(rem))) {
      row = pc.killed.remainder(row);
      if (row.empty()) continue;
      Rational inv = 1 / row.front().second;
      for (auto& e : row) e.second *= inv;
      ElemVec ev;
      for (const auto& [k, x] : row) ev.push_back({pc.elems[k], x});
      HomologyClass cls;
      cls.degree = max_degree(ev);
      cls.representative.assign(n_cur_, Poly(u_));
      for (const auto& [e, x] : ev) cls.representative[e.j] += Poly::monomial(u_, e.m, x);
      pc.killed.insert(row, 0);
      add_multiples(ev);
      if (opt_.hook) {
        for (const auto& extra : opt_.hook(cls.representative)) {
          auto xv = elements_of(extra);
          if (!xv || xv->empty()) continue;
          if (homogeneous_parts(*xv).size() != 1) continue;
          auto placed = place(*xv, Monomial());
          if (!placed) continue;
          pieces_.at(placed->first).pending_u.push_back(placed->second);
          add_multiples(*xv);
        }
      }
      res.classes.push_back(std::move(cls));
    }
  }

  const ChainComplex& c_;
  int p_, d_, dmax_ = 0;
  const HomologyOptions& opt_;
  UniversePtr u_;
  const FreeModuleMap* prev_ = nullptr;
  const FreeModuleMap* next_ = nullptr;
  std::size_t n_cur_ = 0;
  std::vector<int> w_prev_, w_cur_, w_next_;
  std::vector<VarId> active_;
  std::map<VarId, std::size_t> active_index_;
  Monomial param_;
  std::vector<Grade> var_grade_, prev_grade_, cur_grade_;
  std::vector<Monomial> monos_;
  std::vector<Grade> mono_grade_;
  std::map<Grade, Piece> pieces_;
};

}  // namespace

HomologyResult complex_homology_full(const ChainComplex& c, int position, int degree_bound,
                                     const HomologyOptions& options) {
  c.check();
  return Solver(c, position, degree_bound, options).run();
}

std::vector<HomologyClass> complex_homology(const ChainComplex& c, int position, int degree_bound,
                                            const HomologyOptions& options) {
  return complex_homology_full(c, position, degree_bound, options).classes;
}

}  // namespace bvforge
