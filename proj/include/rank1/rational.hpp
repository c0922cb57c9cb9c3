#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace rank1 {

/// Exact rational scalar. Always in lowest terms with a positive
/// denominator; all arithmetic is exact and division by zero throws.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Sign of r as an int: -1, 0, or +1.
inline int sgn(const Rational& r) {
  return r < 0 ? -1 : (r > 0 ? 1 : 0);
}

inline BigInt num(const Rational& r) { return numerator(r); }
inline BigInt den(const Rational& r) { return denominator(r); }

/// Renders "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Parses "p", "-p", or "p/q" (optionally signed on either side).
/// Decimal and exponent notation are rejected: inputs must be exact.
std::optional<Rational> try_parse_rational(std::string_view text);

/// Like try_parse_rational but throws ParseError on malformed input.
Rational parse_rational(std::string_view text);

}  // namespace rank1
