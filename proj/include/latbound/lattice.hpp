#pragma once

#include "latbound/number.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace latbound {

/// A vertex of the Cayley graph of Z^2.
struct LatticePoint {
  BigInt x{0};
  BigInt y{0};

  friend LatticePoint operator+(const LatticePoint& p, const LatticePoint& q) {
    return {p.x + q.x, p.y + q.y};
  }
  friend LatticePoint operator-(const LatticePoint& p, const LatticePoint& q) {
    return {p.x - q.x, p.y - q.y};
  }
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend auto operator<=>(const LatticePoint& p, const LatticePoint& q) {
    if (p.x != q.x) return p.x < q.x ? std::strong_ordering::less : std::strong_ordering::greater;
    if (p.y != q.y) return p.y < q.y ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

/// "x,y"
LatticePoint parse_point(std::string_view text);
std::string to_string(const LatticePoint& p);

/// Digits 0..4 stand for E, N, W, S, E.
using Digit = std::uint8_t;

inline constexpr Digit kEast = 0;
inline constexpr Digit kNorth = 1;
inline constexpr Digit kWest = 2;
inline constexpr Digit kSouth = 3;
inline constexpr Digit kEastAlt = 4;

struct Displacement {
  int dx;
  int dy;
};

Displacement displacement(Digit digit);

/// A finite word in the standard generators, stored over {0,1,2,3}.
class Word {
 public:
  Word() = default;
  /// Accepts digits 0..4; 4 is stored as 0.
  explicit Word(std::string_view digits);

  static Word from_digits(const std::vector<Digit>& digits);

  const std::string& digits() const { return digits_; }
  std::size_t length() const { return digits_.size(); }
  LatticePoint endpoint(const LatticePoint& start = {}) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::string digits_;
};

/// A symmetric finite generating set of Z^2. Construction verifies generation.
class GeneratingSet {
 public:
  struct Vector {
    std::int64_t x;
    std::int64_t y;
    friend bool operator==(const Vector&, const Vector&) = default;
    friend auto operator<=>(const Vector&, const Vector&) = default;
  };

  static constexpr std::int64_t kDefaultGenerationRadius = 64;

  /// Throws std::invalid_argument when a generator is zero, the set is empty, or
  /// BFS from the origin fails to reach both (1,0) and (0,1) within `radius_cap`.
  explicit GeneratingSet(std::vector<Vector> generators,
                         std::int64_t radius_cap = kDefaultGenerationRadius);

  static GeneratingSet standard();

  /// Generators as supplied (deduplicated), without the added inverses.
  const std::vector<Vector>& generators() const { return generators_; }
  /// Symmetric closure, sorted.
  const std::vector<Vector>& symmetric() const { return symmetric_; }

  std::int64_t max_l1_norm() const;

 private:
  std::vector<Vector> generators_;
  std::vector<Vector> symmetric_;
};

/// "1,0;1,1" or the word "standard".
GeneratingSet parse_generating_set(std::string_view text);
std::string to_string(const GeneratingSet& set);

/// Raised when a BFS query cannot be answered within its radius cap.
class RadiusExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Word metric of the standard generating set: the l1 distance.
BigInt word_metric(const LatticePoint& p, const LatticePoint& q);

/// Graph distance in Cay(Z^2, S) by breadth-first search, or std::nullopt when the
/// distance exceeds `radius_cap` ("exceeded" is a value, not an error).
std::optional<std::int64_t> bfs_metric(const GeneratingSet& set, const LatticePoint& p,
                                       const LatticePoint& q, std::int64_t radius_cap);

/// Distance table of the ball of the given radius around the origin.
class BfsBall {
 public:
  BfsBall(const GeneratingSet& set, std::int64_t radius);

  std::int64_t radius() const { return radius_; }
  /// Distance from the origin, or std::nullopt when outside the ball.
  std::optional<std::int64_t> distance(std::int64_t x, std::int64_t y) const;
  std::size_t size() const { return cells_.size(); }

 private:
  struct Cell {
    std::int64_t x;
    std::int64_t y;
    std::int64_t distance;
  };
  std::int64_t radius_;
  std::vector<Cell> cells_;  // sorted by (x, y)
};

/// Number of geodesic words from p to q: binomial(|dx|+|dy|, |dx|).
BigInt geodesic_count(const LatticePoint& p, const LatticePoint& q);

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

/// Geodesic words from p to q in lexicographic digit order, at most `limit` of them.
std::vector<Word> enumerate_geodesics(const LatticePoint& p, const LatticePoint& q,
                                      std::size_t limit);

/// True iff the word never uses both E and W, nor both N and S.
bool is_geodesic_word(const Word& word);

struct LipschitzConstants {
  std::int64_t m;  // max over s in S of d_{S2}(e, s)
  std::int64_t n;  // max over s' in S2 of d_S(e, s')
  friend bool operator==(const LipschitzConstants&, const LipschitzConstants&) = default;
};

/// Constants certifying d_S <= n * d_{S2} and d_{S2} <= m * d_S.
/// Throws RadiusExceeded if a generator lies beyond `radius_cap` in the other metric.
LipschitzConstants generating_set_lipschitz(const GeneratingSet& set, const GeneratingSet& other,
                                            std::int64_t radius_cap);

}  // namespace latbound
