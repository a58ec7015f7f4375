#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pba {

/// Exact rational number in canonical form (gcd 1, positive denominator).
using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on anything else,
/// including a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& value);

} // namespace pba
