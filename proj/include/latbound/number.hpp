#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace latbound {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "-p" or "p/q" into an exact rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Parses a (possibly signed) decimal integer. Throws std::invalid_argument.
BigInt parse_integer(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

BigInt floor(const Rational& value);
BigInt ceil(const Rational& value);

inline BigInt abs(const BigInt& value) { return value < 0 ? BigInt(-value) : value; }
inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

/// Integer square root: the largest s with s*s <= n. n must be nonnegative.
BigInt isqrt(const BigInt& n);

enum class Rounding { Down, Up, Nearest };

/// Fixed-point decimal rendering with `places` fractional digits.
std::string to_decimal(const Rational& value, int places, Rounding rounding = Rounding::Nearest);

/// Converts to a double for presentation only (never used in a decision).
double to_double(const Rational& value);

}  // namespace latbound
