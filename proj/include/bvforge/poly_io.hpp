#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "bvforge/poly.hpp"

namespace bvforge {

/// Syntax or resolution failure while reading a polynomial; column is 1-based.
class PolyParseError : public std::runtime_error {
 public:
  PolyParseError(const std::string& msg, std::size_t column)
      : std::runtime_error(msg), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Canonical text: leading term first, factors joined by '*', unit
/// coefficients omitted, "0" for the zero polynomial.
std::string to_text(const Poly& p);
std::string to_text(const Monomial& m, const Universe& u);

/// Reads the textual grammar: sums of products of rational literals,
/// variables (x, x[1,0], x*, x†, C_1_1*), powers with '^' and parentheses.
/// A '*' directly after a name is the antifield marker unless a factor follows.
Poly parse_poly(std::string_view text, const UniversePtr& u);

}  // namespace bvforge
