#pragma once

#include "latbound/lattice.hpp"
#include "latbound/plane_point.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace latbound {

/// Quasi-isometry constants. k is kept as k^2 so k = sqrt(2) stays exact.
class QIParams {
 public:
  QIParams() = default;
  /// Throws std::invalid_argument unless k >= 1 and c >= 0.
  QIParams(Rational k, Rational c);
  static QIParams from_k_squared(Rational k_squared, Rational c);

  const Rational& k_squared() const { return k_squared_; }
  const Rational& c() const { return c_; }
  /// k itself when it is rational.
  std::optional<Rational> k() const;
  /// "p/q", or "sqrt(p/q)" when k is irrational.
  std::string k_string() const;

 private:
  Rational k_squared_{1};
  Rational c_{0};
};

/// The maps under test:
///   floor     (R^2, l2) -> (Z^2, word metric), (x, y) -> (floor x, floor y)
///   inclusion (Z^2, word metric) -> (R^2, l2)
///   genset    (Z^2, d_S) -> (Z^2, d_S2), the identity
class QIMap {
 public:
  enum class Kind { Floor, Inclusion, GenSet };

  static QIMap floor() { return QIMap(Kind::Floor); }
  static QIMap inclusion() { return QIMap(Kind::Inclusion); }
  static QIMap genset(GeneratingSet domain, GeneratingSet codomain);

  Kind kind() const { return kind_; }
  std::string id() const;
  /// True when the domain is Z^2 (pairs must be lattice points).
  bool lattice_domain() const { return kind_ != Kind::Floor; }
  const GeneratingSet& domain_set() const { return *domain_; }
  const GeneratingSet& codomain_set() const { return *codomain_; }

 private:
  explicit QIMap(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::optional<GeneratingSet> domain_;
  std::optional<GeneratingSet> codomain_;
};

LatticePoint floor_map(const PlanePoint& p);

struct PointPair {
  PlanePoint p;
  PlanePoint q;
};

enum class InequalitySide { Lower, Upper };

struct Violation {
  PointPair pair;
  InequalitySide side;
  double margin;  // amount by which the inequality fails; presentation only
};

/// Seeded uniform sample of `count` pairs from the box [lo, hi]^2. Floor-map samples have
/// rational coordinates with denominators up to 64; lattice-domain samples are integral.
struct SampleSpec {
  Rational lo{-1000};
  Rational hi{1000};
  std::size_t count = 0;
  std::uint64_t seed = 0;
};

std::vector<PointPair> sample_pairs(const QIMap& map, const SampleSpec& spec);

struct QIReport {
  std::string map;
  QIParams params;
  std::uint64_t checked = 0;
  std::vector<Violation> violations;  // sorted canonically
  std::optional<Rational> surjectivity_bound;
  std::optional<SampleSpec> sample;
};

/// Which inequality, if any, a pair violates. Both sides cannot fail at once.
std::optional<Violation> violation_of(const QIMap& map, const QIParams& params, const PointPair& pair);

QIReport check_embedding(const QIMap& map, const QIParams& params, std::span<const PointPair> pairs);
QIReport check_embedding(const QIMap& map, const QIParams& params, const SampleSpec& spec);

enum class SearchStrategy { Grid, DiagonalRay, Random };

/// Search for a witness pair. `budget` is the largest n for the diagonal ((0,0),(n,n)), the
/// grid half-width in grid steps (1/2 for the floor map, 1 otherwise), or the number of
/// random pairs drawn from [-1000, 1000]^2.
std::optional<Violation> find_violation(const QIMap& map, const QIParams& params,
                                        SearchStrategy strategy, std::uint64_t budget,
                                        std::uint64_t seed = 0);

/// Largest squared l2 displacement |p - floor(p)|^2 over the samples.
Rational roundtrip_displacement(std::span<const PlanePoint> samples);

struct SurjectivityBound {
  Rational max_squared_distance;  // farthest probe from the image, squared
  BigInt d;                       // least positive integer D with D^2 > max_squared_distance
};

/// Throws std::invalid_argument for floor-map probes that are not lattice points.
SurjectivityBound quasi_surjectivity_bound(const QIMap& map, std::span<const PlanePoint> probes);

}  // namespace latbound
