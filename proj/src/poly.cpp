#include "bvforge/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace bvforge {

namespace {

using Accumulator = std::map<Monomial, Rational, MonomialGreater>;

void accumulate(Accumulator& acc, const Monomial& m, const Rational& c) {
  auto [it, inserted] = acc.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (is_zero(it->second)) acc.erase(it);
  }
}

std::vector<Poly::Term> drain(Accumulator& acc) {
  std::vector<Poly::Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!bvforge::is_zero(c)) out.push_back({m, c});
  return out;
}

bool has_odd_square(const Monomial& m, const std::vector<bool>& odd) {
  for (const auto& [v, e] : m.factors())
    if (odd[v] && e > 1) return true;
  return false;
}

}  // namespace

Poly Poly::constant(UniversePtr u, const Rational& c) {
  Poly p(std::move(u));
  if (!bvforge::is_zero(c)) {
    p.terms_.push_back({Monomial(), c});
    p.terms_.back().coef.canonicalize();
  }
  return p;
}

Poly Poly::variable(UniversePtr u, VarId v) {
  Poly p(std::move(u));
  p.terms_.push_back({Monomial::variable(v), Rational(1)});
  return p;
}

Poly Poly::variable(UniversePtr u, const GradedVariable& v) {
  VarId id = u->id_of(v);
  return variable(std::move(u), id);
}

Poly Poly::monomial(UniversePtr u, const Monomial& m, const Rational& c) {
  Poly p(std::move(u));
  if (!bvforge::is_zero(c) && !has_odd_square(m, p.u_->odd_mask())) {
    p.terms_.push_back({m, c});
    p.terms_.back().coef.canonicalize();
  }
  return p;
}

Poly Poly::from_terms(UniversePtr u, std::vector<Term> terms) {
  Poly p(std::move(u));
  Accumulator acc;
  for (auto& t : terms) {
    if (bvforge::is_zero(t.coef) || has_odd_square(t.mono, p.u_->odd_mask())) continue;
    t.coef.canonicalize();
    accumulate(acc, t.mono, t.coef);
  }
  p.terms_ = drain(acc);
  return p;
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
  return 0;
}

std::uint32_t Poly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

void Poly::check_universe(const Poly& o) {
  if (!o.u_) return;
  if (!u_) {
    u_ = o.u_;
    return;
  }
  if (!same_universe(u_, o.u_)) throw std::invalid_argument("operands live in different universes");
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  check_universe(o);
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c;
    if (i == terms_.size())
      c = -1;
    else if (j == o.terms_.size())
      c = 1;
    else
      c = degrevlex_compare(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      Rational s = terms_[i].coef + o.terms_[j].coef;
      if (!bvforge::is_zero(s)) out.push_back({std::move(terms_[i].mono), s});
      ++i, ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  r.check_universe(a);
  r.check_universe(b);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  const auto& odd = r.u_->odd_mask();
  Accumulator acc;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      int s = koszul_product_sign(ta.mono, tb.mono, odd);
      if (s == 0) continue;
      Rational c = ta.coef * tb.coef;
      if (s < 0) c = -c;
      accumulate(acc, ta.mono * tb.mono, c);
    }
  }
  r.terms_ = drain(acc);
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  if (bvforge::is_zero(c)) return Poly(u_);
  Poly r = *this;
  Rational k = c;
  k.canonicalize();
  for (auto& t : r.terms_) t.coef *= k;
  return r;
}

void Poly::add_multiple(const Poly& o, const Rational& c, const Monomial& m) {
  check_universe(o);
  if (bvforge::is_zero(c) || o.terms_.empty()) return;
  const auto& odd = u_->odd_mask();
  Poly shifted(u_);
  shifted.terms_.reserve(o.terms_.size());
  for (const auto& t : o.terms_) {
    int s = koszul_product_sign(m, t.mono, odd);
    if (s == 0) continue;
    Rational k = t.coef * c;
    if (s < 0) k = -k;
    shifted.terms_.push_back({m * t.mono, k});
  }
  // multiplication by a monomial preserves the relative order of terms
  *this += shifted;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  if (!terms_.empty() && !same_universe(u_, o.u_)) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != o.terms_[i].mono || terms_[i].coef != o.terms_[i].coef) return false;
  return true;
}

Poly Poly::embed(const UniversePtr& target) const {
  if (u_ == target) return *this;
  Poly r(target);
  if (terms_.empty()) return r;
  std::vector<VarId> map(u_->size());
  for (VarId v : support()) {
    auto id = target->find(u_->var(v));
    if (!id) throw std::invalid_argument("cannot embed: " + display_name(u_->var(v)) + " missing from target universe");
    map[v] = *id;
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<Monomial::Factor> f;
    for (const auto& [v, e] : t.mono.factors()) f.emplace_back(map[v], e);
    out.push_back({Monomial(std::move(f)), t.coef});
  }
  std::sort(out.begin(), out.end(),
            [](const Term& a, const Term& b) { return degrevlex_compare(a.mono, b.mono) > 0; });
  r.terms_ = std::move(out);
  return r;
}

Poly Poly::filtered(const std::function<bool(const Monomial&)>& pred) const {
  Poly r(u_);
  for (const auto& t : terms_)
    if (pred(t.mono)) r.terms_.push_back(t);
  return r;
}

Poly Poly::antifield_component(int af) const {
  if (!u_) return *this;
  const Universe& u = *u_;
  return filtered([&](const Monomial& m) { return bidegree_of(m, u).antifield_number == af; });
}

std::vector<VarId> Poly::support() const {
  std::vector<VarId> s;
  for (const auto& t : terms_)
    for (const auto& [v, e] : t.mono.factors()) s.push_back(v);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Poly Poly::canonicalized() const {
  if (!u_) return *this;
  return from_terms(u_, terms_);
}

Poly graded_derivative(const Poly& p, VarId v, Side side) {
  Poly r(p.universe());
  if (p.is_zero()) return r;
  const auto& odd = p.universe()->odd_mask();
  std::vector<Poly::Term> out;
  for (const auto& t : p.terms()) {
    std::uint32_t e = t.mono.exponent(v);
    if (e == 0) continue;
    Rational c = t.coef;
    if (odd[v]) {
      int crossed = 0;
      for (const auto& [w, ew] : t.mono.factors()) {
        if (!odd[w] || w == v) continue;
        if ((side == Side::Left && w < v) || (side == Side::Right && w > v)) ++crossed;
      }
      if (crossed & 1) c = -c;
    } else {
      c *= e;
    }
    out.push_back({t.mono.without(v), c});
  }
  return Poly::from_terms(p.universe(), std::move(out));
}

Bidegree bidegree_of(const Monomial& m, const Universe& u) {
  Bidegree b;
  for (const auto& [v, e] : m.factors()) {
    Bidegree bv = u.var(v).bidegree();
    b.antifield_number += bv.antifield_number * static_cast<int>(e);
    b.pure_ghost_number += bv.pure_ghost_number * static_cast<int>(e);
    b.parity = (b.parity + bv.parity * static_cast<int>(e)) & 1;
  }
  return b;
}

BidegreeResult bidegree_of(const Poly& p) {
  if (p.is_zero()) return {BidegreeResult::Kind::Zero, {}};
  Bidegree first = bidegree_of(p.leading().mono, *p.universe());
  for (const auto& t : p.terms())
    if (!(bidegree_of(t.mono, *p.universe()) == first)) return {BidegreeResult::Kind::Inhomogeneous, first};
  return {BidegreeResult::Kind::Homogeneous, first};
}

int parity_of(const Poly& p) {
  if (p.is_zero()) return 0;
  const auto& odd = p.universe()->odd_mask();
  int par = odd_count(p.leading().mono, odd) & 1;
  for (const auto& t : p.terms())
    if ((odd_count(t.mono, odd) & 1) != par) throw std::invalid_argument("polynomial has mixed parity");
  return par;
}

Poly substitute(const Poly& p, const std::map<VarId, Poly>& assignment) {
  if (p.is_zero()) return p;
  const auto& u = p.universe();
  for (const auto& [v, img] : assignment) {
    if (img.is_zero()) continue;
    if (!same_universe(img.universe(), u)) throw std::invalid_argument("substitution image in a different universe");
    auto b = bidegree_of(img);
    if (!b.homogeneous() || !(b.degree == u->var(v).bidegree()))
      throw std::invalid_argument("substitution for " + display_name(u->var(v)) +
                                  " does not preserve bidegree and parity");
  }
  Poly result(u);
  for (const auto& t : p.terms()) {
    Poly term = Poly::constant(u, t.coef);
    for (const auto& [v, e] : t.mono.factors()) {
      auto it = assignment.find(v);
      Poly base = it == assignment.end() ? Poly::variable(u, v) : it->second;
      for (std::uint32_t k = 0; k < e; ++k) term = term * base;
      if (term.is_zero()) break;
    }
    result += term;
  }
  return result;
}

}  // namespace bvforge
