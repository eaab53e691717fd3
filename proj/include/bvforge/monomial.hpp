#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bvforge/universe.hpp"

namespace bvforge {

/// A power product stored as (variable id, exponent) pairs, ids ascending.
/// Odd variables appear with exponent one; the factor order is the
/// canonical product order that fixes Koszul signs.
class Monomial {
 public:
  using Factor = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(std::vector<Factor> factors);  // sorts and merges
  static Monomial variable(VarId v, std::uint32_t e = 1) { return Monomial({{v, e}}); }

  const std::vector<Factor>& factors() const { return f_; }
  std::uint32_t degree() const { return deg_; }
  bool is_one() const { return f_.empty(); }
  std::uint32_t exponent(VarId v) const;
  bool contains(VarId v) const { return exponent(v) > 0; }

  /// Plain commutative product (exponents add). No sign or nilpotency handling.
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// o / *this, assuming divides(o).
  Monomial quotient_of(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;
  Monomial without(VarId v) const;  // exponent of v decremented

  bool operator==(const Monomial& o) const { return f_ == o.f_; }
  bool operator!=(const Monomial& o) const { return f_ != o.f_; }

 private:
  std::vector<Factor> f_;
  std::uint32_t deg_ = 0;
};

/// Degree-reverse-lexicographic comparison; variable id 0 is the largest
/// variable. Returns <0, 0, >0.
int degrevlex_compare(const Monomial& a, const Monomial& b);

/// Strict "greater" under degrevlex, for descending containers.
struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return degrevlex_compare(a, b) > 0; }
};

/// Sign and vanishing of the graded product a*b with both in canonical order:
/// returns 0 if an odd variable repeats, otherwise +1 or -1.
int koszul_product_sign(const Monomial& a, const Monomial& b, const std::vector<bool>& odd);

/// Number of odd factors of m; its parity is the monomial parity.
int odd_count(const Monomial& m, const std::vector<bool>& odd);

}  // namespace bvforge
