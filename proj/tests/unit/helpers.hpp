#pragma once

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "bvforge/poly_io.hpp"
#include "bvforge/report.hpp"

namespace testing {

using namespace bvforge;

inline GradedVariable var(const std::string& name, VarKind kind = VarKind::Field, int parity = 0, int fiber = 0,
                          int level = 0) {
  GradedVariable v;
  v.name = name;
  v.kind = kind;
  v.intrinsic_parity = parity;
  v.fiber_index = fiber;
  v.level = level;
  return v;
}

/// Finite universe from "x", "t~" (odd field), "x*" (antifield) style tokens.
inline UniversePtr finite_universe(const std::vector<std::string>& tokens) {
  std::vector<GradedVariable> vs;
  int fiber = 0;
  for (auto t : tokens) {
    bool anti = !t.empty() && t.back() == '*';
    if (anti) t.pop_back();
    bool odd = !t.empty() && t.back() == '~';
    if (odd) t.pop_back();
    vs.push_back(var(t, anti ? VarKind::Antifield : VarKind::Field, odd ? 1 : 0, fiber++));
  }
  return Universe::make(vs, 0);
}

/// Finite universe with a field and its antifield for every token ("a~" odd).
inline UniversePtr paired_universe(const std::vector<std::string>& tokens) {
  std::vector<GradedVariable> vs;
  int fiber = 0;
  for (auto t : tokens) {
    bool odd = !t.empty() && t.back() == '~';
    if (odd) t.pop_back();
    vs.push_back(var(t, VarKind::Field, odd ? 1 : 0, fiber));
    vs.push_back(var(t, VarKind::Antifield, odd ? 1 : 0, fiber));
    ++fiber;
  }
  return Universe::make(vs, 0);
}

/// One-dimensional jet universe with fields, antifields and jets up to max_jet.
inline UniversePtr local_paired_universe(const std::vector<std::string>& tokens, int max_jet) {
  std::vector<GradedVariable> vs;
  int fiber = 0;
  for (auto t : tokens) {
    bool odd = !t.empty() && t.back() == '~';
    if (odd) t.pop_back();
    for (VarKind k : {VarKind::Field, VarKind::Antifield})
      for (int j = 0; j <= max_jet; ++j) {
        GradedVariable v = var(t, k, odd ? 1 : 0, fiber);
        v.jet = {j};
        vs.push_back(v);
      }
    ++fiber;
  }
  return Universe::make(vs, 1);
}

inline Poly P(const UniversePtr& u, const std::string& text) { return parse_poly(text, u); }

inline std::string fixture(const std::string& name) { return std::string(BVFORGE_FIXTURES) + "/" + name + ".bv"; }

struct Loaded {
  ProblemSpec spec;
  LocalAction action;
  int window = 0;
};

inline Loaded load(const std::string& name) {
  Loaded l;
  l.spec = parse_problem(fixture(name));
  l.action = problem_action(l.spec);
  l.window = l.spec.finite_mode() ? 0 : l.spec.bounds.max_jet_order;
  return l;
}

inline KTData load_kt(const std::string& name, int max_level = 4) {
  Loaded l = load(name);
  return build_koszul_tate(l.action, max_level, l.window, l.spec.bounds.degree_bound);
}

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Rational coef() {
    int n = uniform(-5, 5);
    if (n == 0) n = 1;
    return Rational(n, uniform(1, 3));
  }

  /// Random polynomial over the variables with ids in `pool`.
  Poly poly(const UniversePtr& u, const std::vector<VarId>& pool, int max_terms, int max_degree) {
    Poly p(u);
    int n = uniform(1, max_terms);
    for (int i = 0; i < n; ++i) {
      Poly t = Poly::constant(u, coef());
      int d = uniform(0, max_degree);
      for (int j = 0; j < d && !pool.empty(); ++j) t = t * Poly::variable(u, pool[uniform(0, pool.size() - 1)]);
      p += t;
    }
    return p;
  }

  /// Random polynomial whose terms all have parity `parity` (and, if
  /// `bidegree` is set, that exact antifield / ghost number).
  Poly homogeneous(const UniversePtr& u, int parity, int max_terms, int max_degree,
                   const Bidegree* bidegree = nullptr) {
    std::vector<VarId> all;
    for (VarId id = 0; id < u->size(); ++id) all.push_back(id);
    Poly p(u);
    int n = uniform(1, max_terms);
    for (int tries = 0, got = 0; got < n && tries < 200; ++tries) {
      Poly t = Poly::constant(u, coef());
      int d = uniform(0, max_degree);
      for (int j = 0; j < d; ++j) t = t * Poly::variable(u, all[uniform(0, all.size() - 1)]);
      if (t.is_zero()) continue;
      auto b = bidegree_of(t.terms()[0].mono, *u);
      if (b.parity != parity) continue;
      if (bidegree && (b.antifield_number != bidegree->antifield_number ||
                       b.pure_ghost_number != bidegree->pure_ghost_number))
        continue;
      p += t;
      ++got;
    }
    return p;
  }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace testing

namespace doctest {
template <>
struct StringMaker<bvforge::Poly> {
  static String convert(const bvforge::Poly& p) { return bvforge::to_text(p).c_str(); }
};
}  // namespace doctest
