#include "latbound/number.hpp"

#include <stdexcept>

namespace latbound {

namespace {

bool is_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

BigInt parse_integer(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (!is_digits(body)) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  BigInt value{std::string(body)};
  return negative ? BigInt(-value) : value;
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  BigInt num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!is_digits(den_text)) {
    throw std::invalid_argument("bad denominator in '" + std::string(text) + "'");
  }
  BigInt den(std::string{den_text});
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& value) { return value.str(); }
std::string to_string(const BigInt& value) { return value.str(); }

BigInt floor(const Rational& value) {
  const BigInt& num = boost::multiprecision::numerator(value);
  const BigInt& den = boost::multiprecision::denominator(value);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

BigInt ceil(const Rational& value) { return -floor(Rational(-value)); }

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw std::domain_error("isqrt of a negative number");
  return boost::multiprecision::sqrt(n);
}

std::string to_decimal(const Rational& value, int places, Rounding rounding) {
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(places));
  Rational scaled = value * scale;
  BigInt units;
  switch (rounding) {
    case Rounding::Down: units = floor(scaled); break;
    case Rounding::Up: units = ceil(scaled); break;
    case Rounding::Nearest: units = floor(scaled + Rational(1, 2)); break;
  }
  bool negative = units < 0;
  if (negative) units = -units;
  std::string digits = units.str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places)) {
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  return negative ? "-" + digits : digits;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace latbound
