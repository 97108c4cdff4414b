#pragma once

#include "latbound/lattice.hpp"
#include "latbound/surd.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace latbound {

using Digits = std::vector<Digit>;

std::string to_string(const Digits& digits);
/// Digit string over 0..4 ("" allowed).
Digits parse_digits(std::string_view text);

/// Eventually repeating tail: the period repeated forever.
struct PeriodicTail {
  Digits period;
  friend bool operator==(const PeriodicTail&, const PeriodicTail&) = default;
};

/// The staircase Q_theta for a direction with nonnegative components (dx, dy) in the
/// reflected first-quadrant frame, mapped to the digits of `quadrant`, started after
/// `skip` of its digits.
struct SturmianTail {
  Surd dx;  // l1-normalized: dx + dy == 1
  Surd dy;
  int quadrant = 1;
  std::uint64_t skip = 0;

  /// Normalizes the direction. Throws std::invalid_argument on a zero or negative component
  /// or a quadrant outside 1..4.
  static SturmianTail make(const Surd& dx, const Surd& dy, int quadrant, std::uint64_t skip = 0);

  bool is_irrational() const;
  friend bool operator==(const SturmianTail&, const SturmianTail&) = default;
};

/// Horizontal and vertical digit used by each quadrant: I {0,1}, II {2,1}, III {2,3}, IV {4,3}.
Digit horizontal_digit(int quadrant);
Digit vertical_digit(int quadrant);

/// Number of horizontal steps among the first n steps of the first-quadrant staircase for
/// direction (dx, dy). Crossing order: a vertical grid line is crossed first on exact lattice
/// hits.
BigInt staircase_horizontal_count(const Surd& dx, const Surd& dy, const BigInt& n);

/// A geodesic ray from the origin in the Cayley graph of Z^2, as a finite preamble followed by
/// an infinite tail. Values are stored as given; `canonicalize` and `validate` enforce the
/// canonical form.
class RayCode {
 public:
  using Tail = std::variant<PeriodicTail, SturmianTail>;

  RayCode() : tail_(PeriodicTail{{kEast}}) {}
  RayCode(Digits preamble, Tail tail) : preamble_(std::move(preamble)), tail_(std::move(tail)) {}

  static RayCode periodic(Digits preamble, Digits period) {
    return RayCode(std::move(preamble), PeriodicTail{std::move(period)});
  }
  static RayCode east() { return periodic({}, {kEast}); }
  /// The ray repeating a single direction digit (taken mod 4).
  static RayCode axis(int digit);

  const Digits& preamble() const { return preamble_; }
  const Tail& tail() const { return tail_; }
  bool is_periodic() const { return std::holds_alternative<PeriodicTail>(tail_); }
  const PeriodicTail& periodic_tail() const { return std::get<PeriodicTail>(tail_); }
  const SturmianTail& sturmian_tail() const { return std::get<SturmianTail>(tail_); }

  friend bool operator==(const RayCode&, const RayCode&) = default;

 private:
  Digits preamble_;
  Tail tail_;
};

/// Ray literal grammar:
///   "<preamble>(<period>)"                        e.g. "01(0011)", "(0)"
///   "<preamble>slope:<p>/<q>@<quadrant>[+<skip>]" e.g. "slope:2/1@1", "0slope:sqrt(2)/1@1"
/// p and q are nonnegative surd components (see parse_surd). Throws std::invalid_argument.
RayCode parse_ray(std::string_view literal);
std::string to_string(const RayCode& ray);

/// The canonical code of the same digit stream (minimal preamble, primitive period, east
/// written as 4 only alongside south, rational Sturmian tails made periodic), or std::nullopt
/// when the stream is not a geodesic ray (uses both E and W, or both N and S).
std::optional<RayCode> canonicalize(const RayCode& ray);

/// True iff the code is already canonical and its digits lie in {m, m+1}.
bool validate(const RayCode& ray);

/// Throws std::invalid_argument naming `what` unless validate(ray).
void require_valid(const RayCode& ray, std::string_view what = "ray");

/// m(f): the minimum digit of the stream.
Digit min_digit(const RayCode& ray);

/// n-th digit, n >= 1.
Digit digit_at(const RayCode& ray, std::uint64_t n);

/// Position after t unit steps.
LatticePoint point_at(const RayCode& ray, std::uint64_t t);

/// Sequential access to digits and positions; far cheaper than repeated point_at.
class RayWalker {
 public:
  explicit RayWalker(const RayCode& ray);

  /// Advances one step and returns the digit taken.
  Digit step();
  std::uint64_t time() const { return time_; }
  std::int64_t x() const { return x_; }
  std::int64_t y() const { return y_; }
  LatticePoint point() const { return {x_, y_}; }

 private:
  Digit next_digit();

  const RayCode* ray_;
  std::uint64_t time_ = 0;
  std::int64_t x_ = 0;
  std::int64_t y_ = 0;
  // Sturmian stream state in the reflected frame.
  BigInt horizontal_ = 0;
  BigInt vertical_ = 0;
  // dx/dy lies in [ratio_lo_, ratio_hi_] * 2^-60; used while the counters stay small.
  bool fast_ = false;
  unsigned __int128 ratio_lo_ = 0;
  unsigned __int128 ratio_hi_ = 0;
  std::uint64_t h_small_ = 0;
  std::uint64_t v_small_ = 0;
};

/// l1 distance between two rays at integer time t, walked in lockstep.
std::int64_t lockstep_distance(RayWalker& f, RayWalker& g);

}  // namespace latbound
