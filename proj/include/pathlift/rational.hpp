#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pathlift {

/// Exact rational number. GMP keeps it in canonical reduced form with a
/// positive denominator after every arithmetic operation, but the
/// two-argument constructor does not reduce; use rat() for literals.
/// Stored data (weights, distances, breakpoints, intervals) is
/// canonicalized on construction.
using Rational = mpq_class;

/// Parses "p/q" or "p". Throws ParseError on malformed input or a zero
/// denominator.
Rational parse_rational(std::string_view text);

/// Formats as "p/q", always with an explicit denominator ("0/1", "1/1").
std::string to_string(const Rational& value);

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Smallest integer n with n >= value.
mpz_class ceil(const Rational& value);

}  // namespace pathlift
