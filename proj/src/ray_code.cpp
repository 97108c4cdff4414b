#include "latbound/ray_code.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace latbound {

namespace {

constexpr std::array<Digit, 4> kHorizontal{kEast, kWest, kWest, kEastAlt};
constexpr std::array<Digit, 4> kVertical{kNorth, kNorth, kSouth, kSouth};

void check_quadrant(int quadrant) {
  if (quadrant < 1 || quadrant > 4) throw std::invalid_argument("quadrant must be in 1..4");
}

// Digit at position n (1-based) of the unshifted staircase stream.
Digit sturmian_stream_digit(const SturmianTail& tail, const BigInt& n) {
  BigInt before = staircase_horizontal_count(tail.dx, tail.dy, BigInt(n - 1));
  BigInt after = staircase_horizontal_count(tail.dx, tail.dy, n);
  return after > before ? horizontal_digit(tail.quadrant) : vertical_digit(tail.quadrant);
}

// The period of the staircase for a rational direction, in the quadrant's digits.
Digits rational_staircase_period(const Rational& dx, const Rational& dy, int quadrant) {
  // Scale (dx, dy) to coprime integers (p, q); the stream then repeats every p + q digits.
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  BigInt den = boost::multiprecision::lcm(denominator(dx), denominator(dy));
  BigInt p = numerator(dx) * (den / denominator(dx));
  BigInt q = numerator(dy) * (den / denominator(dy));
  BigInt g = boost::multiprecision::gcd(p, q);
  p /= g;
  q /= g;
  if (p + q > 1'000'000) throw std::invalid_argument("rational direction period too long");
  Digits period;
  BigInt previous = 0;
  for (BigInt n = 1; n <= p + q; ++n) {
    BigInt count = staircase_horizontal_count(Surd(p), Surd(q), n);
    period.push_back(count > previous ? horizontal_digit(quadrant) : vertical_digit(quadrant));
    previous = count;
  }
  return period;
}

// Shortest word w with period == w^k.
Digits primitive_root(const Digits& period) {
  const std::size_t n = period.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < n && repeats; ++i) repeats = period[i] == period[i - d];
    if (repeats) return Digits(period.begin(), period.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return period;
}

bool is_direction_digit(Digit d) { return d <= kEastAlt; }

}  // namespace

std::string to_string(const Digits& digits) {
  std::string out;
  out.reserve(digits.size());
  for (Digit d : digits) out.push_back(static_cast<char>('0' + d));
  return out;
}

Digits parse_digits(std::string_view text) {
  Digits digits;
  digits.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '4') {
      throw std::invalid_argument("digits must be in 0..4, got '" + std::string(text) + "'");
    }
    digits.push_back(static_cast<Digit>(c - '0'));
  }
  return digits;
}

Digit horizontal_digit(int quadrant) {
  check_quadrant(quadrant);
  return kHorizontal[static_cast<std::size_t>(quadrant - 1)];
}

Digit vertical_digit(int quadrant) {
  check_quadrant(quadrant);
  return kVertical[static_cast<std::size_t>(quadrant - 1)];
}

SturmianTail SturmianTail::make(const Surd& dx, const Surd& dy, int quadrant, std::uint64_t skip) {
  check_quadrant(quadrant);
  if (dx.sign() < 0 || dy.sign() < 0) {
    throw std::invalid_argument("staircase direction components must be nonnegative");
  }
  Surd total = dx + dy;
  if (total.sign() == 0) throw std::invalid_argument("zero direction");
  SturmianTail tail;
  tail.dx = dx / total;
  tail.dy = Surd(1) - tail.dx;
  tail.quadrant = quadrant;
  tail.skip = skip;
  return tail;
}

bool SturmianTail::is_irrational() const { return !dx.is_rational(); }

BigInt staircase_horizontal_count(const Surd& dx, const Surd& dy, const BigInt& n) {
  if (n <= 0) return 0;
  if (dy.sign() == 0) return n;
  if (dx.sign() == 0) return 0;
  // Horizontal event a happens at time a/dx, vertical event b at b/dy; vertical b precedes
  // horizontal a iff b*dx < a*dy. The rank of horizontal event a is therefore
  // (a - 1) + #{b >= 1 : b < a*dy/dx} = (a - 1) + ceil(a*dy/dx) - 1.
  const Surd slope = dy / dx;
  auto rank = [&](const BigInt& a) { return BigInt(a - 1 + (Surd(a) * slope).ceil() - 1); };
  BigInt lo = 0;  // rank(lo) < n holds (vacuously for 0)
  BigInt hi = n;  // largest candidate
  while (lo < hi) {
    BigInt mid = (lo + hi + 1) / 2;
    if (rank(mid) < n) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

RayCode RayCode::axis(int digit) {
  int d = ((digit % 4) + 4) % 4;
  return periodic({}, {static_cast<Digit>(d)});
}

RayCode parse_ray(std::string_view literal) {
  auto fail = [&](const std::string& why) -> std::invalid_argument {
    return std::invalid_argument("bad ray literal '" + std::string(literal) + "': " + why);
  };
  if (auto slope = literal.find("slope:"); slope != std::string_view::npos) {
    Digits preamble = parse_digits(literal.substr(0, slope));
    std::string_view body = literal.substr(slope + 6);
    auto at = body.find('@');
    if (at == std::string_view::npos) throw fail("missing @quadrant");
    std::string_view direction = body.substr(0, at);
    std::string_view rest = body.substr(at + 1);
    auto slash = direction.find('/');
    if (slash == std::string_view::npos) throw fail("direction must be <p>/<q>");
    Surd dx = parse_surd(direction.substr(0, slash));
    Surd dy = parse_surd(direction.substr(slash + 1));
    std::uint64_t skip = 0;
    if (auto plus = rest.find('+'); plus != std::string_view::npos) {
      skip = parse_integer(rest.substr(plus + 1)).convert_to<std::uint64_t>();
      rest = rest.substr(0, plus);
    }
    if (rest.size() != 1 || rest[0] < '1' || rest[0] > '4') throw fail("quadrant must be 1..4");
    return RayCode(std::move(preamble), SturmianTail::make(dx, dy, rest[0] - '0', skip));
  }
  auto open = literal.find('(');
  if (open == std::string_view::npos || literal.empty() || literal.back() != ')') {
    throw fail("expected <preamble>(<period>)");
  }
  Digits preamble = parse_digits(literal.substr(0, open));
  Digits period = parse_digits(literal.substr(open + 1, literal.size() - open - 2));
  if (period.empty()) throw fail("empty period");
  return RayCode::periodic(std::move(preamble), std::move(period));
}

std::string to_string(const RayCode& ray) {
  std::string out = to_string(ray.preamble());
  if (ray.is_periodic()) return out + "(" + to_string(ray.periodic_tail().period) + ")";
  const SturmianTail& tail = ray.sturmian_tail();
  // Scale to integer coefficients so the literal stays within the surd grammar.
  auto den = [](const Surd& s) {
    return boost::multiprecision::lcm(boost::multiprecision::denominator(s.rational_part()),
                                      boost::multiprecision::denominator(s.surd_part()));
  };
  BigInt scale = boost::multiprecision::lcm(den(tail.dx), den(tail.dy));
  out += "slope:" + (tail.dx * Surd(scale)).str() + "/" + (tail.dy * Surd(scale)).str() + "@" +
         std::to_string(tail.quadrant);
  if (tail.skip > 0) out += "+" + std::to_string(tail.skip);
  return out;
}

std::optional<RayCode> canonicalize(const RayCode& ray) {
  Digits preamble = ray.preamble();
  std::optional<PeriodicTail> periodic;
  std::optional<SturmianTail> sturmian;
  if (ray.is_periodic()) {
    periodic = ray.periodic_tail();
  } else if (ray.sturmian_tail().is_irrational()) {
    sturmian = ray.sturmian_tail();
  } else {
    const SturmianTail& tail = ray.sturmian_tail();
    Digits period = rational_staircase_period(tail.dx.rational_part(), tail.dy.rational_part(),
                                              tail.quadrant);
    std::rotate(period.begin(),
                period.begin() + static_cast<std::ptrdiff_t>(tail.skip % period.size()),
                period.end());
    periodic = PeriodicTail{std::move(period)};
  }
  if (periodic && periodic->period.empty()) return std::nullopt;

  // Which of E, N, W, S the stream uses.
  bool uses[4] = {false, false, false, false};
  auto mark = [&](Digit d) { uses[d % 4] = true; };
  for (Digit d : preamble) {
    if (!is_direction_digit(d)) return std::nullopt;
    mark(d);
  }
  if (periodic) {
    for (Digit d : periodic->period) {
      if (!is_direction_digit(d)) return std::nullopt;
      mark(d);
    }
  } else {
    mark(horizontal_digit(sturmian->quadrant));
    mark(vertical_digit(sturmian->quadrant));
  }
  if ((uses[kEast] && uses[kWest]) || (uses[kNorth] && uses[kSouth])) return std::nullopt;

  // East is written 4 exactly when the stream also heads south.
  const Digit east = uses[kSouth] ? kEastAlt : kEast;
  auto fix_east = [&](Digits& digits) {
    for (Digit& d : digits) {
      if (d == kEast || d == kEastAlt) d = east;
    }
  };
  fix_east(preamble);

  if (periodic) {
    Digits period = primitive_root(periodic->period);
    fix_east(period);
    while (!preamble.empty() && preamble.back() == period.back()) {
      preamble.pop_back();
      std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    }
    return RayCode(std::move(preamble), PeriodicTail{std::move(period)});
  }

  SturmianTail tail = *sturmian;
  while (!preamble.empty() && tail.skip > 0 &&
         preamble.back() == sturmian_stream_digit(tail, BigInt(tail.skip))) {
    preamble.pop_back();
    --tail.skip;
  }
  return RayCode(std::move(preamble), std::move(tail));
}

bool validate(const RayCode& ray) {
  auto canonical = canonicalize(ray);
  if (!canonical || !(*canonical == ray)) return false;
  // Unit speed over a short horizon; implied by the digit constraint.
  RayWalker walker(ray);
  for (int t = 1; t <= 64; ++t) {
    walker.step();
    if (std::abs(walker.x()) + std::abs(walker.y()) != t) return false;
  }
  return true;
}

void require_valid(const RayCode& ray, std::string_view what) {
  if (!validate(ray)) {
    std::string message = std::string(what) + " '" + to_string(ray) + "' is not a canonical geodesic ray";
    if (auto canonical = canonicalize(ray)) message += " (canonical form: " + to_string(*canonical) + ")";
    throw std::invalid_argument(message);
  }
}

Digit min_digit(const RayCode& ray) {
  Digit m = kEastAlt;
  for (Digit d : ray.preamble()) m = std::min(m, d);
  if (ray.is_periodic()) {
    for (Digit d : ray.periodic_tail().period) m = std::min(m, d);
  } else {
    const SturmianTail& tail = ray.sturmian_tail();
    m = std::min({m, horizontal_digit(tail.quadrant), vertical_digit(tail.quadrant)});
  }
  return m;
}

Digit digit_at(const RayCode& ray, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("digit positions start at 1");
  const Digits& preamble = ray.preamble();
  if (n <= preamble.size()) return preamble[n - 1];
  const std::uint64_t k = n - preamble.size();
  if (ray.is_periodic()) {
    const Digits& period = ray.periodic_tail().period;
    return period[(k - 1) % period.size()];
  }
  const SturmianTail& tail = ray.sturmian_tail();
  return sturmian_stream_digit(tail, BigInt(tail.skip) + k);
}

LatticePoint point_at(const RayCode& ray, std::uint64_t t) {
  auto add = [](LatticePoint& p, Digit d, const BigInt& times) {
    auto step = displacement(d);
    p.x += times * step.dx;
    p.y += times * step.dy;
  };
  LatticePoint p;
  const Digits& preamble = ray.preamble();
  const std::uint64_t head = std::min<std::uint64_t>(t, preamble.size());
  for (std::uint64_t i = 0; i < head; ++i) add(p, preamble[i], 1);
  if (t <= preamble.size()) return p;
  const std::uint64_t rest = t - preamble.size();
  if (ray.is_periodic()) {
    const Digits& period = ray.periodic_tail().period;
    const BigInt full = rest / period.size();
    for (std::size_t i = 0; i < period.size(); ++i) {
      add(p, period[i], full + (i < rest % period.size() ? 1 : 0));
    }
    return p;
  }
  const SturmianTail& tail = ray.sturmian_tail();
  const BigInt start(tail.skip);
  const BigInt end = start + rest;
  BigInt horizontal = staircase_horizontal_count(tail.dx, tail.dy, end) -
                      staircase_horizontal_count(tail.dx, tail.dy, start);
  add(p, horizontal_digit(tail.quadrant), horizontal);
  add(p, vertical_digit(tail.quadrant), BigInt(rest - horizontal));
  return p;
}

namespace {
constexpr unsigned kFastBits = 60;
constexpr std::uint64_t kFastLimit = std::uint64_t(1) << 24;
}  // namespace

RayWalker::RayWalker(const RayCode& ray) : ray_(&ray) {
  if (!ray.is_periodic()) {
    const SturmianTail& tail = ray.sturmian_tail();
    horizontal_ = staircase_horizontal_count(tail.dx, tail.dy, BigInt(tail.skip));
    vertical_ = BigInt(tail.skip) - horizontal_;
    if (tail.dx.sign() > 0 && tail.dy.sign() > 0 && horizontal_ < kFastLimit && vertical_ < kFastLimit) {
      auto [lo, hi] = (tail.dx / tail.dy).enclose(kFastBits);
      const BigInt scale = BigInt(1) << kFastBits;
      BigInt lo_units = floor(lo * scale);
      BigInt hi_units = ceil(hi * scale);
      if (hi_units < (BigInt(1) << 100)) {
        fast_ = true;
        ratio_lo_ = static_cast<unsigned __int128>(lo_units.convert_to<std::uint64_t>()) |
                    (static_cast<unsigned __int128>((lo_units >> 64).convert_to<std::uint64_t>()) << 64);
        ratio_hi_ = static_cast<unsigned __int128>(hi_units.convert_to<std::uint64_t>()) |
                    (static_cast<unsigned __int128>((hi_units >> 64).convert_to<std::uint64_t>()) << 64);
        h_small_ = horizontal_.convert_to<std::uint64_t>();
        v_small_ = vertical_.convert_to<std::uint64_t>();
      }
    }
  }
}

Digit RayWalker::next_digit() {
  const Digits& preamble = ray_->preamble();
  if (time_ < preamble.size()) return preamble[time_];
  const std::uint64_t k = time_ - preamble.size();
  if (ray_->is_periodic()) {
    const Digits& period = ray_->periodic_tail().period;
    return period[k % period.size()];
  }
  const SturmianTail& tail = ray_->sturmian_tail();
  if (fast_ && h_small_ < kFastLimit && v_small_ < kFastLimit) {
    // (h+1)/(v+1) against the enclosure of dx/dy; exact comparison only near a tie.
    const unsigned __int128 lhs = static_cast<unsigned __int128>(h_small_ + 1) << kFastBits;
    if (lhs <= (v_small_ + 1) * ratio_lo_) {
      ++h_small_;
      horizontal_ += 1;
      return horizontal_digit(tail.quadrant);
    }
    if (lhs > (v_small_ + 1) * ratio_hi_) {
      ++v_small_;
      vertical_ += 1;
      return vertical_digit(tail.quadrant);
    }
  }
  // Horizontal iff crossing x = h+1 happens no later than crossing y = v+1.
  bool horizontal = tail.dy.sign() == 0 ||
                    (tail.dx.sign() != 0 &&
                     Surd(BigInt(horizontal_ + 1)) * tail.dy <= Surd(BigInt(vertical_ + 1)) * tail.dx);
  if (horizontal) {
    horizontal_ += 1;
    ++h_small_;
    return horizontal_digit(tail.quadrant);
  }
  vertical_ += 1;
  ++v_small_;
  return vertical_digit(tail.quadrant);
}

Digit RayWalker::step() {
  Digit d = next_digit();
  auto delta = displacement(d);
  x_ += delta.dx;
  y_ += delta.dy;
  ++time_;
  return d;
}

std::int64_t lockstep_distance(RayWalker& f, RayWalker& g) {
  return std::abs(f.x() - g.x()) + std::abs(f.y() - g.y());
}

}  // namespace latbound
