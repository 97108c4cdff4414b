#include "latbound/quasi.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>

namespace latbound {

namespace {

// Exact test of sqrt(a) <= sqrt(b) + c for rationals a, b >= 0 and any rational c.
bool sqrt_le(const Rational& a, const Rational& b, const Rational& c) {
  if (c >= 0) {
    // a <= b + 2c*sqrt(b) + c^2
    Rational lhs = a - b - c * c;
    return lhs <= 0 || lhs * lhs <= 4 * c * c * b;
  }
  // sqrt(a) + |c| <= sqrt(b)  <=>  2|c|*sqrt(a) <= b - a - c^2
  Rational rhs = b - a - c * c;
  return rhs >= 0 && 4 * c * c * a <= rhs * rhs;
}

bool is_integral(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

LatticePoint as_lattice(const PlanePoint& p) {
  if (!is_integral(p.x) || !is_integral(p.y)) {
    throw std::invalid_argument("point " + to_string(p) + " is not a lattice point");
  }
  return {boost::multiprecision::numerator(p.x), boost::multiprecision::numerator(p.y)};
}

// Distances in Cay(Z^2, S) for the pairs of one query, via shared BFS balls.
class GensetDistances {
 public:
  GensetDistances(const QIMap& map, std::span<const PointPair> pairs)
      : domain_(map.domain_set()), codomain_(map.codomain_set()) {
    BigInt reach = 0;
    for (const auto& pair : pairs) {
      reach = std::max(reach, word_metric(as_lattice(pair.p), as_lattice(pair.q)));
    }
    if (reach > 4096) throw std::invalid_argument("genset pairs must lie within l1 distance 4096");
    auto r = reach.convert_to<std::int64_t>();
    domain_ball_.emplace(domain_, r * stretch(domain_));
    codomain_ball_.emplace(codomain_, r * stretch(codomain_));
  }

  std::pair<std::int64_t, std::int64_t> operator()(const PointPair& pair) const {
    LatticePoint offset = as_lattice(pair.q) - as_lattice(pair.p);
    auto x = offset.x.convert_to<std::int64_t>();
    auto y = offset.y.convert_to<std::int64_t>();
    return {*domain_ball_->distance(x, y), *codomain_ball_->distance(x, y)};
  }

  // Each standard generator costs at most this many letters of `set`.
  static std::int64_t stretch(const GeneratingSet& set) {
    return std::max(*bfs_metric(set, {}, {1, 0}, GeneratingSet::kDefaultGenerationRadius),
                    *bfs_metric(set, {}, {0, 1}, GeneratingSet::kDefaultGenerationRadius));
  }

 private:
  const GeneratingSet& domain_;
  const GeneratingSet& codomain_;
  std::optional<BfsBall> domain_ball_;
  std::optional<BfsBall> codomain_ball_;
};

// Inequalities written as sqrt(a) <= sqrt(b) + c with exact rationals.
struct Comparison {
  Rational a;
  Rational b;
  Rational c;
  bool holds() const { return sqrt_le(a, b, c); }
  double margin() const {
    return std::sqrt(to_double(a)) - std::sqrt(to_double(b)) - to_double(c);
  }
};

struct PairDistances {
  // Squared distances in the domain and codomain.
  Rational domain_sq;
  Rational codomain_sq;
};

std::optional<Violation> judge(const QIParams& params, const PointPair& pair, const PairDistances& d) {
  const Rational& k2 = params.k_squared();
  const Rational& c = params.c();
  // Lower: d_X/k - c <= d_Y   <=>  sqrt(d_X^2/k^2) <= sqrt(d_Y^2) + c
  Comparison lower{d.domain_sq / k2, d.codomain_sq, c};
  if (!lower.holds()) return Violation{pair, InequalitySide::Lower, lower.margin()};
  // Upper: d_Y <= k*d_X + c  <=>  sqrt(d_Y^2) <= sqrt(k^2 d_X^2) + c
  Comparison upper{d.codomain_sq, k2 * d.domain_sq, c};
  if (!upper.holds()) return Violation{pair, InequalitySide::Upper, upper.margin()};
  return std::nullopt;
}

PairDistances plane_lattice_distances(const QIMap& map, const PointPair& pair) {
  if (map.kind() == QIMap::Kind::Floor) {
    Rational lattice(word_metric(floor_map(pair.p), floor_map(pair.q)));
    return {squared_euclidean(pair.p, pair.q), lattice * lattice};
  }
  Rational lattice(word_metric(as_lattice(pair.p), as_lattice(pair.q)));
  return {lattice * lattice, squared_euclidean(pair.p, pair.q)};
}

bool violation_order(const Violation& u, const Violation& v) {
  auto key = [](const Violation& w) {
    return std::tie(w.side, w.pair.p.x, w.pair.p.y, w.pair.q.x, w.pair.q.y);
  };
  return key(u) < key(v);
}

BigInt uniform_integer(std::mt19937_64& rng, const BigInt& lo, const BigInt& hi) {
  if (hi - lo > BigInt(std::numeric_limits<std::int64_t>::max())) {
    throw std::invalid_argument("sample box too large");
  }
  std::uniform_int_distribution<std::int64_t> dist(0, (hi - lo).convert_to<std::int64_t>());
  return lo + dist(rng);
}

}  // namespace

QIParams::QIParams(Rational k, Rational c) : k_squared_(k * k), c_(std::move(c)) {
  if (k < 1) throw std::invalid_argument("quasi-isometry constant k must be >= 1");
  if (c_ < 0) throw std::invalid_argument("quasi-isometry constant c must be >= 0");
}

QIParams QIParams::from_k_squared(Rational k_squared, Rational c) {
  if (k_squared < 1) throw std::invalid_argument("quasi-isometry constant k must be >= 1");
  if (c < 0) throw std::invalid_argument("quasi-isometry constant c must be >= 0");
  QIParams params;
  params.k_squared_ = std::move(k_squared);
  params.c_ = std::move(c);
  return params;
}

std::optional<Rational> QIParams::k() const {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  BigInt num = isqrt(numerator(k_squared_));
  BigInt den = isqrt(denominator(k_squared_));
  if (num * num != numerator(k_squared_) || den * den != denominator(k_squared_)) return std::nullopt;
  return Rational(num, den);
}

std::string QIParams::k_string() const {
  if (auto k_value = k()) return to_string(*k_value);
  return "sqrt(" + to_string(k_squared_) + ")";
}

QIMap QIMap::genset(GeneratingSet domain, GeneratingSet codomain) {
  QIMap map(Kind::GenSet);
  map.domain_ = std::move(domain);
  map.codomain_ = std::move(codomain);
  return map;
}

std::string QIMap::id() const {
  switch (kind_) {
    case Kind::Floor: return "floor";
    case Kind::Inclusion: return "inclusion";
    case Kind::GenSet: return "genset(" + to_string(*domain_) + "|" + to_string(*codomain_) + ")";
  }
  return "";
}

LatticePoint floor_map(const PlanePoint& p) { return {floor(p.x), floor(p.y)}; }

std::vector<PointPair> sample_pairs(const QIMap& map, const SampleSpec& spec) {
  if (spec.hi < spec.lo) throw std::invalid_argument("sample box needs lo <= hi");
  std::mt19937_64 rng(spec.seed);
  auto coordinate = [&]() -> Rational {
    if (map.lattice_domain()) return Rational(uniform_integer(rng, ceil(spec.lo), floor(spec.hi)));
    BigInt den = uniform_integer(rng, 1, 64);
    return Rational(uniform_integer(rng, ceil(spec.lo * den), floor(spec.hi * den)), den);
  };
  if (map.lattice_domain() && ceil(spec.lo) > floor(spec.hi)) {
    throw std::invalid_argument("sample box contains no lattice points");
  }
  std::vector<PointPair> pairs;
  pairs.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    PlanePoint p{coordinate(), coordinate()};
    PlanePoint q{coordinate(), coordinate()};
    pairs.push_back({std::move(p), std::move(q)});
  }
  return pairs;
}

std::optional<Violation> violation_of(const QIMap& map, const QIParams& params, const PointPair& pair) {
  if (map.kind() == QIMap::Kind::GenSet) {
    GensetDistances distances(map, std::span<const PointPair>(&pair, 1));
    auto [dx, dy] = distances(pair);
    return judge(params, pair, {Rational(dx * dx), Rational(dy * dy)});
  }
  return judge(params, pair, plane_lattice_distances(map, pair));
}

QIReport check_embedding(const QIMap& map, const QIParams& params, std::span<const PointPair> pairs) {
  QIReport report;
  report.map = map.id();
  report.params = params;
  std::optional<GensetDistances> genset;
  if (map.kind() == QIMap::Kind::GenSet) genset.emplace(map, pairs);
  for (const auto& pair : pairs) {
    std::optional<Violation> violation;
    if (genset) {
      auto [dx, dy] = (*genset)(pair);
      violation = judge(params, pair, {Rational(dx * dx), Rational(dy * dy)});
    } else {
      violation = judge(params, pair, plane_lattice_distances(map, pair));
    }
    if (violation) report.violations.push_back(std::move(*violation));
    ++report.checked;
  }
  std::sort(report.violations.begin(), report.violations.end(), violation_order);
  return report;
}

QIReport check_embedding(const QIMap& map, const QIParams& params, const SampleSpec& spec) {
  auto pairs = sample_pairs(map, spec);
  QIReport report = check_embedding(map, params, std::span<const PointPair>(pairs));
  report.sample = spec;
  return report;
}

std::optional<Violation> find_violation(const QIMap& map, const QIParams& params,
                                        SearchStrategy strategy, std::uint64_t budget,
                                        std::uint64_t seed) {
  switch (strategy) {
    case SearchStrategy::DiagonalRay:
      for (std::uint64_t n = 1; n <= budget; ++n) {
        Rational v{BigInt(n)};
        if (auto w = violation_of(map, params, {{0, 0}, {v, v}})) return w;
      }
      return std::nullopt;
    case SearchStrategy::Grid: {
      if (budget > 64) throw std::invalid_argument("grid half-width is limited to 64");
      const Rational step = map.lattice_domain() ? Rational(1) : Rational(1, 2);
      const auto half = static_cast<std::int64_t>(budget);
      std::vector<PlanePoint> grid;
      for (std::int64_t i = -half; i <= half; ++i) {
        for (std::int64_t j = -half; j <= half; ++j) grid.push_back({step * i, step * j});
      }
      std::vector<PointPair> batch;
      for (const auto& p : grid) {
        batch.clear();
        for (const auto& q : grid) {
          if (!(p == q)) batch.push_back({p, q});
        }
        QIReport report = check_embedding(map, params, std::span<const PointPair>(batch));
        if (!report.violations.empty()) {
          // First violating pair in grid order, not the canonical report order.
          for (const auto& pair : batch) {
            if (auto w = violation_of(map, params, pair)) return w;
          }
        }
      }
      return std::nullopt;
    }
    case SearchStrategy::Random: {
      SampleSpec spec{-1000, 1000, static_cast<std::size_t>(budget), seed};
      for (const auto& pair : sample_pairs(map, spec)) {
        if (auto w = violation_of(map, params, pair)) return w;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Rational roundtrip_displacement(std::span<const PlanePoint> samples) {
  Rational worst = 0;
  for (const auto& p : samples) {
    LatticePoint f = floor_map(p);
    worst = std::max(worst, squared_euclidean(p, {Rational(f.x), Rational(f.y)}));
  }
  return worst;
}

SurjectivityBound quasi_surjectivity_bound(const QIMap& map, std::span<const PlanePoint> probes) {
  Rational worst = 0;
  for (const auto& target : probes) {
    if (map.kind() == QIMap::Kind::Inclusion) {
      // Nearest lattice point, coordinate by coordinate.
      auto nearest = [](const Rational& v) { return Rational(floor(v + Rational(1, 2))); };
      PlanePoint lattice{nearest(target.x), nearest(target.y)};
      worst = std::max(worst, squared_euclidean(target, lattice));
    } else {
      // floor and the genset identity are onto Z^2: every lattice target is hit.
      as_lattice(target);
    }
  }
  // (s+1)^2 > floor(worst) is an integer bound, hence > worst
  return {worst, isqrt(floor(worst)) + 1};
}

}  // namespace latbound
