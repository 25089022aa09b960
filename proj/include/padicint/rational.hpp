#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace padicint {

using Integer = mpz_class;
using Rational = mpq_class;

/// Renders a rational as "a" or "a/b" (lowest terms, sign on the numerator).
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// Parses "a", "-a" or "a/b"; throws ParseError on malformed text or b = 0.
Rational parse_rational(std::string_view text);

/// num/den in lowest terms; mpq_class(num, den) alone does not reduce.
Rational fraction(long num, long den);

Integer ipow(const Integer& base, unsigned long exponent);

/// base^exponent for any integer exponent; base must be nonzero when exponent < 0.
Rational rpow(const Rational& base, long exponent);

constexpr long floor_div(long a, long b) {
  long quotient = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --quotient;
  return quotient;
}

constexpr long ceil_div(long a, long b) { return -floor_div(-a, b); }

constexpr long mod_floor(long a, long b) { return a - b * floor_div(a, b); }

/// Saturating conversion; throws Error(Domain) if the value leaves int64 range.
long to_long(const Integer& value);

}  // namespace padicint
