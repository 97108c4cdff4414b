#include "latbound/surd.hpp"

#include <stdexcept>

namespace latbound {

Surd::Surd(Rational a, Rational b, BigInt radicand)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(radicand)) {
  if (d_ < 0) throw std::domain_error("negative radicand");
  normalize();
}

void Surd::normalize() {
  if (d_ == 0) b_ = 0;
  if (b_ == 0) {
    d_ = 1;
    return;
  }
  // Pull square factors out of the radicand.
  BigInt outside = 1;
  for (BigInt p = 2; p * p <= d_; ++p) {
    while (d_ % (p * p) == 0) {
      d_ /= p * p;
      outside *= p;
    }
  }
  b_ *= outside;
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
  }
}

BigInt Surd::common_radicand(const Surd& x, const Surd& y) {
  if (x.b_ == 0) return y.d_;
  if (y.b_ == 0) return x.d_;
  if (x.d_ != y.d_) throw std::domain_error("surds from different quadratic fields");
  return x.d_;
}

int Surd::sign() const {
  int sa = a_.sign();
  int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the larger magnitude wins; equality is impossible for squarefree d > 1.
  return a_ * a_ > b_ * b_ * d_ ? sa : sb;
}

Surd Surd::conjugate() const {
  Surd out = *this;
  out.b_ = -out.b_;
  return out;
}

Surd Surd::operator-() const {
  Surd out = *this;
  out.a_ = -out.a_;
  out.b_ = -out.b_;
  return out;
}

Surd operator+(const Surd& x, const Surd& y) {
  BigInt d = Surd::common_radicand(x, y);
  return Surd(x.a_ + y.a_, x.b_ + y.b_, d);
}

Surd operator-(const Surd& x, const Surd& y) { return x + (-y); }

Surd operator*(const Surd& x, const Surd& y) {
  BigInt d = Surd::common_radicand(x, y);
  return Surd(x.a_ * y.a_ + x.b_ * y.b_ * Rational(d), x.a_ * y.b_ + x.b_ * y.a_, d);
}

Surd operator/(const Surd& x, const Surd& y) {
  Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * Rational(y.d_);
  if (norm == 0) throw std::domain_error("division by zero surd");
  Surd numerator = x * y.conjugate();
  return Surd(numerator.a_ / norm, numerator.b_ / norm, numerator.d_);
}

BigInt Surd::floor() const {
  if (is_rational()) return latbound::floor(a_);
  Rational square = b_ * b_ * Rational(d_);
  const BigInt& num = boost::multiprecision::numerator(square);
  const BigInt& den = boost::multiprecision::denominator(square);
  // sqrt(num/den) = sqrt(num*den)/den, bracketed by the integer root.
  Rational root(isqrt(num * den), den);
  BigInt k = latbound::floor(b_ > 0 ? Rational(a_ + root) : Rational(a_ - root));
  while ((*this - Surd(k)).sign() < 0) k -= 1;
  while ((*this - Surd(BigInt(k + 1))).sign() >= 0) k += 1;
  return k;
}

BigInt Surd::ceil() const { return -(-*this).floor(); }

std::pair<Rational, Rational> Surd::enclose(unsigned bits) const {
  if (is_rational()) return {a_, a_};
  BigInt scale = BigInt(1) << bits;
  BigInt f = (*this * Surd(scale)).floor();
  return {Rational(f, scale), Rational(BigInt(f + 1), scale)};
}

std::string Surd::str() const {
  if (is_rational()) return to_string(a_);
  std::string out;
  if (a_ != 0) out = to_string(a_);
  Rational magnitude = abs(b_);
  if (b_ < 0) {
    out += "-";
  } else if (!out.empty()) {
    out += "+";
  }
  if (magnitude != 1) out += to_string(magnitude) + "*";
  out += "sqrt(" + d_.str() + ")";
  return out;
}

namespace {

class SurdScanner {
 public:
  explicit SurdScanner(std::string_view text) : text_(text) {}

  Surd parse() {
    Surd value = term(accept('-') ? -1 : 1);
    if (!at_end()) {
      int sign;
      if (accept('+')) {
        sign = 1;
      } else if (accept('-')) {
        sign = -1;
      } else {
        fail();
      }
      value = value + term(sign);
    }
    if (!at_end()) fail();
    return value;
  }

 private:
  Surd term(int sign) {
    if (peek_word("sqrt(")) return Surd(0, sign, radicand());
    BigInt coefficient = integer() * sign;
    if (accept('*')) {
      if (!peek_word("sqrt(")) fail();
      return Surd(0, Rational(coefficient), radicand());
    }
    return Surd(coefficient);
  }

  BigInt radicand() {
    pos_ += 5;  // "sqrt("
    BigInt d = integer();
    if (!accept(')')) fail();
    return d;
  }

  BigInt integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (start == pos_) fail();
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  bool peek_word(std::string_view word) const { return text_.substr(pos_, word.size()) == word; }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_end() const { return pos_ == text_.size(); }

  [[noreturn]] void fail() const {
    throw std::invalid_argument("bad surd literal '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Surd parse_surd(std::string_view text) { return SurdScanner(text).parse(); }

}  // namespace latbound
