#pragma once

#include "latbound/rays.hpp"

namespace latbound {

/// Fractional bits for certified enclosures: LATTICE_HORIZON_PRECISION, default 64.
unsigned horizon_precision();

/// Outward-rounded enclosure of pi with endpoints on the grid 2^-bits.
RationalInterval pi_enclosure(unsigned bits);

/// Enclosure of sqrt(n) with endpoints on the grid 2^-bits. n must be nonnegative.
RationalInterval sqrt_enclosure(const BigInt& n, unsigned bits);

/// Two routes between points at distance epsilon from the apex of the cone: straight through
/// the apex (2 sqrt(26) eps) and around the cone (pi eps).
struct ConeLengths {
  Rational epsilon;
  RationalInterval through;
  RationalInterval around;
  bool extendable = false;  // through <= around, decided on disjoint enclosures
  unsigned bits = 0;        // precision that separated the enclosures
};

/// Throws std::invalid_argument unless epsilon > 0. Precision is doubled until the two
/// enclosures are disjoint.
ConeLengths cone_lengths(const Rational& epsilon, unsigned bits = horizon_precision());

}  // namespace latbound
