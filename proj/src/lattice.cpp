#include "latbound/lattice.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace latbound {

namespace {

std::vector<std::string_view> split(std::string_view text, char separator) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(separator, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

struct PackedHash {
  std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& v) const noexcept {
    auto h = static_cast<std::uint64_t>(v.first) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(v.second) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

using Key = std::pair<std::int64_t, std::int64_t>;

// Coordinates reached within `radius` steps stay below radius * max_norm in l1.
void check_search_width(std::int64_t radius, std::int64_t max_norm) {
  if (BigInt(radius) * max_norm > (BigInt(1) << 60)) {
    throw std::invalid_argument("BFS radius too large for this generating set");
  }
}

// Level-synchronous BFS from the origin; calls `visit(x, y, depth)` for every vertex of the
// ball and stops early when `visit` returns true.
template <typename Visit>
void bfs_from_origin(const std::vector<GeneratingSet::Vector>& steps, std::int64_t radius,
                     Visit&& visit) {
  std::unordered_set<Key, PackedHash> seen;
  std::vector<Key> frontier{{0, 0}};
  seen.insert({0, 0});
  for (std::int64_t depth = 0;; ++depth) {
    std::vector<Key> next;
    for (const auto& [x, y] : frontier) {
      if (visit(x, y, depth)) return;
    }
    if (depth == radius) return;
    for (const auto& [x, y] : frontier) {
      for (const auto& g : steps) {
        Key k{x + g.x, y + g.y};
        if (seen.insert(k).second) next.push_back(k);
      }
    }
    if (next.empty()) return;
    frontier = std::move(next);
  }
}

}  // namespace

LatticePoint parse_point(std::string_view text) {
  auto parts = split(text, ',');
  if (parts.size() != 2) {
    throw std::invalid_argument("expected a point \"x,y\", got '" + std::string(text) + "'");
  }
  return {parse_integer(parts[0]), parse_integer(parts[1])};
}

std::string to_string(const LatticePoint& p) { return p.x.str() + "," + p.y.str(); }

Displacement displacement(Digit digit) {
  switch (digit) {
    case kEast:
    case kEastAlt: return {1, 0};
    case kNorth: return {0, 1};
    case kWest: return {-1, 0};
    case kSouth: return {0, -1};
    default: throw std::invalid_argument("digit out of range 0..4");
  }
}

Word::Word(std::string_view digits) {
  digits_.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '4') {
      throw std::invalid_argument("word digits must be in 0..4, got '" + std::string(digits) + "'");
    }
    digits_.push_back(c == '4' ? '0' : c);
  }
}

Word Word::from_digits(const std::vector<Digit>& digits) {
  std::string text;
  text.reserve(digits.size());
  for (Digit d : digits) text.push_back(static_cast<char>('0' + d));
  return Word(text);
}

LatticePoint Word::endpoint(const LatticePoint& start) const {
  std::int64_t dx = 0;
  std::int64_t dy = 0;
  for (char c : digits_) {
    auto step = displacement(static_cast<Digit>(c - '0'));
    dx += step.dx;
    dy += step.dy;
  }
  return {start.x + dx, start.y + dy};
}

GeneratingSet::GeneratingSet(std::vector<Vector> generators, std::int64_t radius_cap) {
  if (generators.empty()) throw std::invalid_argument("generating set is empty");
  if (radius_cap < 1) throw std::invalid_argument("radius cap must be positive");
  for (const auto& g : generators) {
    if (g.x == 0 && g.y == 0) throw std::invalid_argument("generating set contains the zero vector");
  }
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  generators_ = generators;
  for (const auto& g : generators) {
    symmetric_.push_back(g);
    symmetric_.push_back({-g.x, -g.y});
  }
  std::sort(symmetric_.begin(), symmetric_.end());
  symmetric_.erase(std::unique(symmetric_.begin(), symmetric_.end()), symmetric_.end());

  check_search_width(radius_cap, max_l1_norm());
  bool east = false;
  bool north = false;
  bfs_from_origin(symmetric_, radius_cap, [&](std::int64_t x, std::int64_t y, std::int64_t) {
    east = east || (x == 1 && y == 0);
    north = north || (x == 0 && y == 1);
    return east && north;
  });
  if (!east || !north) {
    throw std::invalid_argument("set " + to_string(*this) +
                                " does not generate Z^2 within radius " +
                                std::to_string(radius_cap));
  }
}

GeneratingSet GeneratingSet::standard() { return GeneratingSet({{1, 0}, {0, 1}}); }

std::int64_t GeneratingSet::max_l1_norm() const {
  std::int64_t best = 0;
  for (const auto& g : generators_) best = std::max(best, std::abs(g.x) + std::abs(g.y));
  return best;
}

GeneratingSet parse_generating_set(std::string_view text) {
  if (text == "standard") return GeneratingSet::standard();
  std::vector<GeneratingSet::Vector> generators;
  for (auto part : split(text, ';')) {
    LatticePoint p = parse_point(part);
    if (abs(p.x) > (BigInt(1) << 40) || abs(p.y) > (BigInt(1) << 40)) {
      throw std::invalid_argument("generator too large: '" + std::string(part) + "'");
    }
    generators.push_back({p.x.convert_to<std::int64_t>(), p.y.convert_to<std::int64_t>()});
  }
  return GeneratingSet(std::move(generators));
}

std::string to_string(const GeneratingSet& set) {
  std::string out;
  for (const auto& g : set.generators()) {
    if (!out.empty()) out += ";";
    out += std::to_string(g.x) + "," + std::to_string(g.y);
  }
  return out;
}

BigInt word_metric(const LatticePoint& p, const LatticePoint& q) {
  return abs(BigInt(p.x - q.x)) + abs(BigInt(p.y - q.y));
}

std::optional<std::int64_t> bfs_metric(const GeneratingSet& set, const LatticePoint& p,
                                       const LatticePoint& q, std::int64_t radius_cap) {
  if (radius_cap < 1) throw std::invalid_argument("radius cap must be positive");
  check_search_width(radius_cap, set.max_l1_norm());
  // Left-invariance: d(p, q) = d(e, q - p).
  LatticePoint offset = q - p;
  if (word_metric(offset, {}) > BigInt(radius_cap) * set.max_l1_norm()) return std::nullopt;
  const auto tx = offset.x.convert_to<std::int64_t>();
  const auto ty = offset.y.convert_to<std::int64_t>();
  std::optional<std::int64_t> found;
  bfs_from_origin(set.symmetric(), radius_cap, [&](std::int64_t x, std::int64_t y, std::int64_t depth) {
    if (x == tx && y == ty) {
      found = depth;
      return true;
    }
    return false;
  });
  return found;
}

BfsBall::BfsBall(const GeneratingSet& set, std::int64_t radius) : radius_(radius) {
  if (radius < 0) throw std::invalid_argument("negative BFS radius");
  check_search_width(radius, set.max_l1_norm());
  bfs_from_origin(set.symmetric(), radius, [&](std::int64_t x, std::int64_t y, std::int64_t depth) {
    cells_.push_back({x, y, depth});
    return false;
  });
  std::sort(cells_.begin(), cells_.end(), [](const Cell& a, const Cell& b) {
    return std::tie(a.x, a.y) < std::tie(b.x, b.y);
  });
}

std::optional<std::int64_t> BfsBall::distance(std::int64_t x, std::int64_t y) const {
  auto it = std::lower_bound(cells_.begin(), cells_.end(), std::pair{x, y},
                             [](const Cell& c, const std::pair<std::int64_t, std::int64_t>& key) {
                               return std::tie(c.x, c.y) < std::tie(key.first, key.second);
                             });
  if (it == cells_.end() || it->x != x || it->y != y) return std::nullopt;
  return it->distance;
}

BigInt geodesic_count(const LatticePoint& p, const LatticePoint& q) {
  BigInt a = abs(BigInt(q.x - p.x));
  BigInt b = abs(BigInt(q.y - p.y));
  BigInt k = a < b ? a : b;
  BigInt n = a + b;
  BigInt result = 1;
  for (BigInt i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

std::vector<Word> enumerate_geodesics(const LatticePoint& p, const LatticePoint& q,
                                      std::size_t limit) {
  std::vector<Word> words;
  if (limit == 0) return words;
  BigInt dx = q.x - p.x;
  BigInt dy = q.y - p.y;
  if (word_metric(p, q) > 1'000'000) {
    throw std::length_error("geodesic words longer than 10^6 steps are not enumerated");
  }
  const char horizontal = dx >= 0 ? '0' : '2';
  const char vertical = dy >= 0 ? '1' : '3';
  std::string digits(abs(dx).convert_to<std::size_t>(), horizontal);
  digits.append(abs(dy).convert_to<std::size_t>(), vertical);
  std::sort(digits.begin(), digits.end());
  do {
    words.emplace_back(digits);
  } while (words.size() < limit && std::next_permutation(digits.begin(), digits.end()));
  return words;
}

bool is_geodesic_word(const Word& word) {
  bool seen[4] = {false, false, false, false};
  for (char c : word.digits()) seen[c - '0'] = true;
  return !(seen[kEast] && seen[kWest]) && !(seen[kNorth] && seen[kSouth]);
}

LipschitzConstants generating_set_lipschitz(const GeneratingSet& set, const GeneratingSet& other,
                                            std::int64_t radius_cap) {
  auto max_distance = [&](const GeneratingSet& metric, const GeneratingSet& targets) {
    std::int64_t best = 0;
    for (const auto& g : targets.symmetric()) {
      auto d = bfs_metric(metric, {}, {g.x, g.y}, radius_cap);
      if (!d) {
        throw RadiusExceeded("generator " + std::to_string(g.x) + "," + std::to_string(g.y) +
                             " lies beyond radius " + std::to_string(radius_cap));
      }
      best = std::max(best, *d);
    }
    return best;
  };
  return {max_distance(other, set), max_distance(set, other)};
}

}  // namespace latbound
