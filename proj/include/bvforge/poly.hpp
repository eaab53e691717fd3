#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "bvforge/monomial.hpp"
#include "bvforge/rational.hpp"
#include "bvforge/universe.hpp"

namespace bvforge {

/// Element of the free graded-commutative algebra over Q on a Universe.
///
/// Terms are kept in canonical form: nonzero coefficients, distinct
/// monomials sorted descending under degrevlex, no repeated odd factor.
/// A default-constructed Poly is the zero of no particular universe and
/// combines with any operand.
class Poly {
 public:
  struct Term {
    Monomial mono;
    Rational coef;
  };

  Poly() = default;
  explicit Poly(UniversePtr u) : u_(std::move(u)) {}

  static Poly constant(UniversePtr u, const Rational& c);
  static Poly variable(UniversePtr u, VarId v);
  static Poly variable(UniversePtr u, const GradedVariable& v);
  static Poly monomial(UniversePtr u, const Monomial& m, const Rational& c = 1);
  /// Builds from terms whose monomials are already in canonical factor
  /// order; merges duplicates and drops zeros and odd squares.
  static Poly from_terms(UniversePtr u, std::vector<Term> terms);

  const UniversePtr& universe() const { return u_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Rational constant_term() const;
  std::uint32_t total_degree() const;  // max over terms, 0 for zero

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Rational& c) const;
  /// this + c * m * o (m on the left, with Koszul signs).
  void add_multiple(const Poly& o, const Rational& c, const Monomial& m);

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Re-expresses the polynomial in a universe containing all of its variables.
  Poly embed(const UniversePtr& target) const;
  /// Keeps the terms satisfying pred.
  Poly filtered(const std::function<bool(const Monomial&)>& pred) const;
  /// Terms of the given antifield number.
  Poly antifield_component(int af) const;
  /// Sorted ids of the variables occurring.
  std::vector<VarId> support() const;

  /// Re-normalizes; identity on canonical input.
  Poly canonicalized() const;

 private:
  void check_universe(const Poly& o);
  UniversePtr u_;
  std::vector<Term> terms_;
};

enum class Side { Left, Right };

/// Graded partial derivative. Left and right derivatives differ by
/// (-1)^{|v|(|p|-|v|)} on homogeneous p.
Poly graded_derivative(const Poly& p, VarId v, Side side);

/// Homomorphic substitution. Each image must match the parity and bidegree
/// of its variable (zero is always allowed). Throws std::invalid_argument.
Poly substitute(const Poly& p, const std::map<VarId, Poly>& assignment);

Bidegree bidegree_of(const Monomial& m, const Universe& u);

struct BidegreeResult {
  enum class Kind { Zero, Homogeneous, Inhomogeneous } kind;
  Bidegree degree;
  bool homogeneous() const { return kind != Kind::Inhomogeneous; }
};

/// Common bidegree of all terms. Zero is homogeneous of every degree.
BidegreeResult bidegree_of(const Poly& p);

/// Parity of a homogeneous polynomial (0 for zero). Throws if mixed parity.
int parity_of(const Poly& p);

}  // namespace bvforge
