#include "latbound/cone.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace latbound {

namespace {

BigInt pow2(unsigned bits) { return BigInt(1) << bits; }

RationalInterval round_outward(const RationalInterval& x, unsigned bits) {
  BigInt scale = pow2(bits);
  return {Rational(floor(x.lo * scale), scale), Rational(ceil(x.hi * scale), scale)};
}

// atan(1/x) by its alternating series; consecutive partial sums bracket the limit.
RationalInterval arctan_inverse(unsigned x, unsigned bits) {
  const Rational tolerance(1, pow2(bits));
  const BigInt x2 = BigInt(x) * x;
  BigInt power = x;  // x^(2k+1)
  Rational sum = 0;
  for (unsigned k = 0;; ++k) {
    Rational term(1, BigInt(2 * k + 1) * power);
    Rational next = k % 2 == 0 ? Rational(sum + term) : Rational(sum - term);
    if (term < tolerance) return next < sum ? RationalInterval{next, sum} : RationalInterval{sum, next};
    sum = next;
    power *= x2;
  }
}

}  // namespace

unsigned horizon_precision() {
  const char* env = std::getenv("LATTICE_HORIZON_PRECISION");
  if (env == nullptr || *env == '\0') return 64;
  std::size_t used = 0;
  unsigned long bits = 0;
  try {
    bits = std::stoul(env, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::string(env).size() || bits < 8 || bits > 4096) {
    throw std::invalid_argument("LATTICE_HORIZON_PRECISION must be an integer in [8, 4096]");
  }
  return static_cast<unsigned>(bits);
}

RationalInterval pi_enclosure(unsigned bits) {
  // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
  const unsigned work = bits + 8;
  RationalInterval a = arctan_inverse(5, work);
  RationalInterval b = arctan_inverse(239, work);
  return round_outward({16 * a.lo - 4 * b.hi, 16 * a.hi - 4 * b.lo}, bits);
}

RationalInterval sqrt_enclosure(const BigInt& n, unsigned bits) {
  if (n < 0) throw std::domain_error("square root of a negative number");
  BigInt scale = pow2(bits);
  BigInt s = isqrt(n * scale * scale);
  if (s * s == n * scale * scale) return {Rational(s, scale), Rational(s, scale)};
  return {Rational(s, scale), Rational(s + 1, scale)};
}

ConeLengths cone_lengths(const Rational& epsilon, unsigned bits) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  for (;; bits *= 2) {
    RationalInterval root = sqrt_enclosure(26, bits);
    RationalInterval pi = pi_enclosure(bits);
    ConeLengths out{epsilon,
                    {2 * epsilon * root.lo, 2 * epsilon * root.hi},
                    {epsilon * pi.lo, epsilon * pi.hi},
                    false,
                    bits};
    if (out.through.hi <= out.around.lo) {
      out.extendable = true;
      return out;
    }
    if (out.through.lo > out.around.hi) return out;
  }
}

}  // namespace latbound
