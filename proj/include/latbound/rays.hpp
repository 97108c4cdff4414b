#pragma once

#include "latbound/ray_code.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace latbound {

/// A signed direction in the plane with components in one quadratic field.
struct PlaneDirection {
  Surd x;
  Surd y;
  friend bool operator==(const PlaneDirection&, const PlaneDirection&) = default;
};

/// "p,q" with surd components, e.g. "2,1", "-1,sqrt(2)".
PlaneDirection parse_direction(std::string_view text);
std::string to_string(const PlaneDirection& direction);

/// A binary sequence given as preamble and repeating period over {0,1}.
struct BinarySequence {
  Digits preamble;
  Digits period;
};

/// "<preamble>(<period>)" over {0,1}.
BinarySequence parse_binary_sequence(std::string_view text);

/// Value of sum e_n / 2^n, exact via the geometric series of the period.
Rational b_map(const BinarySequence& sequence);

struct RationalInterval {
  Rational lo;
  Rational hi;
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  Rational width() const { return hi - lo; }
};

/// Exact for periodic tails; an enclosure of width 2^-bits for staircase tails.
using NMapValue = std::variant<Rational, RationalInterval>;

/// N(f) = m + B(f - m). Requires validate(ray).
NMapValue n_map(const RayCode& ray, unsigned bits = 64);

/// True iff f and g are canonical codes whose residual streams are w 1 0 0 0 ... and
/// w 0 1 1 1 ... (in either order), the only way two codes share an N value.
bool dyadic_twins(const RayCode& f, const RayCode& g);

/// The staircase ray Q_theta for `direction`; periodic for rational directions.
/// Throws std::invalid_argument on the zero direction.
RayCode digitize(const PlaneDirection& direction);

/// l1-normalized asymptotic direction. Requires validate(ray).
PlaneDirection direction_of(const RayCode& ray);

struct Asymptotic {
  BigInt bound;           // d(f(t), g(t)) <= bound for every integer t
  bool attained = false;  // the bound is the exact supremum and is reached
};

struct Divergent {
  std::uint64_t witness = 0;  // first t with d(f(t), g(t)) > threshold
  std::int64_t threshold = 0;
  std::int64_t distance = 0;  // d(f(witness), g(witness))
};

struct Unknown {
  std::uint64_t horizon = 0;
};

using AsymptoticVerdict = std::variant<Asymptotic, Divergent, Unknown>;

inline constexpr std::int64_t kDefaultDivergenceThreshold = 10;
inline constexpr std::uint64_t kMaxWitnessHorizon = 10'000'000;

/// Decides whether two valid rays stay at bounded distance, with a certified bound or a
/// divergence witness for `threshold`. Unknown only when the witness lies past `max_horizon`.
AsymptoticVerdict are_asymptotic(const RayCode& f, const RayCode& g,
                                 std::int64_t threshold = kDefaultDivergenceThreshold,
                                 std::uint64_t max_horizon = kMaxWitnessHorizon);

std::string describe(const AsymptoticVerdict& verdict);

/// Smallest t <= horizon with d(f(t), g(t)) > threshold.
std::optional<std::uint64_t> divergence_time(const RayCode& f, const RayCode& g,
                                             std::int64_t threshold, std::uint64_t horizon);

class QuadrantMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// True iff the two rays never head in opposite directions, i.e. share a closed quadrant.
bool same_closed_quadrant(const RayCode& f, const RayCode& g);

/// The ray following f for s steps and then g's steps from s on. Throws QuadrantMismatch
/// unless same_closed_quadrant(f, g).
RayCode splice(const RayCode& f, const RayCode& g, std::uint64_t s);

/// Compact time interval K = [a, b] and radius epsilon of a basis neighbourhood B_K(f, eps).
struct BallQuery {
  Rational a;
  Rational b;
  Rational epsilon;

  /// Throws std::invalid_argument unless 0 <= a <= b and epsilon > 0.
  BallQuery(Rational a, Rational b, Rational epsilon);
};

/// max over integer t in [ceil(a), floor(b)] of d(f(t), g(t)) < epsilon.
bool ball_contains(const RayCode& center, const RayCode& candidate, const BallQuery& query);

struct SpliceStep {
  std::string role;  // "target", "axis" or "target-via-axis"
  RayCode center;
  RayCode target;
  RayCode spliced;
  bool in_ball = false;
  AsymptoticVerdict verdict;
  bool passed() const { return in_ball && std::holds_alternative<Asymptotic>(verdict); }
};

struct TopologyReport {
  std::uint64_t s = 0;
  RayCode f;
  RayCode g;
  std::vector<SpliceStep> steps;
  bool passed() const;
  /// The directly spliced representative g_s (f and g in one closed quadrant), if any.
  const SpliceStep* target_step() const;
};

/// Splices g into B_K(f, eps) with s = ceil(b), then walks the axis chain m+1, m+2, m+3, m+4
/// (mod 4) from f. When f and g lie in different quadrants, g is reached from the first axis
/// of the chain sharing its quadrant if `chain_to_target` is set; otherwise QuadrantMismatch.
TopologyReport trivial_topology_demo(const RayCode& f, const RayCode& g, const BallQuery& query,
                                     bool chain_to_target = false);

}  // namespace latbound
