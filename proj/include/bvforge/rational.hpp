#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bvforge {

using Rational = mpq_class;
using Integer = mpz_class;

/// Lowest-terms rendering, "3/2" or "-4".
std::string to_string(const Rational& q);

/// Parses "p" or "p/q" with an optional sign. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace bvforge
