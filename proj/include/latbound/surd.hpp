#pragma once

#include "latbound/number.hpp"

#include <string>
#include <string_view>

namespace latbound {

/// An element a + b*sqrt(d) of a real quadratic field, with d squarefree.
/// d == 1 (with b folded into a) represents a plain rational.
class Surd {
 public:
  Surd() = default;
  Surd(Rational rational) : a_(std::move(rational)) {}  // NOLINT: implicit by design of the algebra
  Surd(const BigInt& integer) : a_(integer) {}           // NOLINT
  Surd(int integer) : a_(integer) {}                     // NOLINT
  Surd(Rational a, Rational b, BigInt radicand);

  static Surd sqrt(const BigInt& radicand) { return Surd(0, 1, radicand); }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  const BigInt& radicand() const { return d_; }

  bool is_rational() const { return b_ == 0; }

  int sign() const;
  Surd conjugate() const;

  Surd operator-() const;
  friend Surd operator+(const Surd& x, const Surd& y);
  friend Surd operator-(const Surd& x, const Surd& y);
  friend Surd operator*(const Surd& x, const Surd& y);
  friend Surd operator/(const Surd& x, const Surd& y);

  friend bool operator==(const Surd& x, const Surd& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
  }
  friend bool operator<(const Surd& x, const Surd& y) { return (x - y).sign() < 0; }
  friend bool operator<=(const Surd& x, const Surd& y) { return (x - y).sign() <= 0; }
  friend bool operator>(const Surd& x, const Surd& y) { return (x - y).sign() > 0; }
  friend bool operator>=(const Surd& x, const Surd& y) { return (x - y).sign() >= 0; }

  BigInt floor() const;
  BigInt ceil() const;

  /// Rational enclosure [lo, hi] of width at most 2^-bits.
  std::pair<Rational, Rational> enclose(unsigned bits) const;

  /// "a", "b*sqrt(d)", "a+b*sqrt(d)" with rational a, b.
  std::string str() const;

 private:
  void normalize();
  static BigInt common_radicand(const Surd& x, const Surd& y);

  Rational a_{0};
  Rational b_{0};
  BigInt d_{1};
};

/// Parses the surd grammar used by direction literals:
///   component := ['-'] term [('+'|'-') term]
///   term      := INT | [INT '*'] 'sqrt(' INT ')'
Surd parse_surd(std::string_view text);

}  // namespace latbound
