#include "latbound/rays.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace latbound {

namespace {

Surd surd_abs(const Surd& s) { return s.sign() < 0 ? -s : s; }

Surd l1_norm(const Surd& x, const Surd& y) { return surd_abs(x) + surd_abs(y); }

struct SurdVector {
  Surd x;
  Surd y;
};

SurdVector preamble_displacement(const Digits& preamble) {
  std::int64_t x = 0;
  std::int64_t y = 0;
  for (Digit d : preamble) {
    auto step = displacement(d);
    x += step.dx;
    y += step.dy;
  }
  return {Surd(BigInt(x)), Surd(BigInt(y))};
}

int horizontal_sign(int quadrant) { return quadrant == 2 || quadrant == 3 ? -1 : 1; }
int vertical_sign(int quadrant) { return quadrant >= 3 ? -1 : 1; }

// Upper bound on |f(t) - t * direction_of(f)|_1 over all t.
BigInt deviation_bound(const RayCode& ray) {
  BigInt preamble(ray.preamble().size());
  if (ray.is_periodic()) return 2 * (preamble + ray.periodic_tail().period.size());
  return 2 * preamble + 4;
}

// Rational lower bound on |u - v|_1 for two directions; positive when they differ.
Rational separation_lower_bound(const PlaneDirection& u, const PlaneDirection& v) {
  for (unsigned bits = 32;; bits *= 2) {
    Rational total = 0;
    auto component = [&](const Surd& a, const Surd& b) {
      auto [alo, ahi] = a.enclose(bits);
      auto [blo, bhi] = b.enclose(bits);
      Rational gap = std::max(alo - bhi, blo - ahi);
      if (gap > 0) total += gap;
    };
    component(u.x, v.x);
    component(u.y, v.y);
    if (total > 0) return total;
    if (bits > 4096) throw std::logic_error("directions could not be separated");
  }
}

std::int64_t max_distance_over(const RayCode& f, const RayCode& g, std::uint64_t horizon) {
  RayWalker wf(f);
  RayWalker wg(g);
  std::int64_t best = 0;
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    wf.step();
    wg.step();
    best = std::max(best, lockstep_distance(wf, wg));
  }
  return best;
}

// Offset c with f(t) - t*dir = c + eps(t) for t past the preamble, |eps|_1 < 2.
SurdVector staircase_offset(const RayCode& ray, const PlaneDirection& dir) {
  const SturmianTail& tail = ray.sturmian_tail();
  const auto preamble = static_cast<std::int64_t>(ray.preamble().size());
  SurdVector disp = preamble_displacement(ray.preamble());
  BigInt skip(tail.skip);
  BigInt h = staircase_horizontal_count(tail.dx, tail.dy, skip);
  Surd sx = Surd(BigInt(h * horizontal_sign(tail.quadrant)));
  Surd sy = Surd(BigInt((skip - h) * vertical_sign(tail.quadrant)));
  Surd kx = Surd(skip) * dir.x;
  Surd ky = Surd(skip) * dir.y;
  return {disp.x - Surd(BigInt(preamble)) * dir.x - (sx - kx),
          disp.y - Surd(BigInt(preamble)) * dir.y - (sy - ky)};
}

}  // namespace

PlaneDirection parse_direction(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw std::invalid_argument("expected a direction \"p,q\", got '" + std::string(text) + "'");
  }
  return {parse_surd(text.substr(0, comma)), parse_surd(text.substr(comma + 1))};
}

std::string to_string(const PlaneDirection& direction) {
  return direction.x.str() + "," + direction.y.str();
}

BinarySequence parse_binary_sequence(std::string_view text) {
  RayCode code = parse_ray(text);
  if (!code.is_periodic()) throw std::invalid_argument("binary sequences must be periodic");
  BinarySequence sequence{code.preamble(), code.periodic_tail().period};
  for (const Digits* part : {&sequence.preamble, &sequence.period}) {
    for (Digit d : *part) {
      if (d > 1) throw std::invalid_argument("binary sequence digits must be 0 or 1");
    }
  }
  return sequence;
}

Rational b_map(const BinarySequence& sequence) {
  if (sequence.period.empty()) throw std::invalid_argument("empty period");
  Rational value = 0;
  Rational weight(1, 2);
  for (Digit d : sequence.preamble) {
    if (d > 1) throw std::invalid_argument("binary sequence digits must be 0 or 1");
    if (d == 1) value += weight;
    weight /= 2;
  }
  // The period read as a binary integer V repeats with ratio 2^-L: V / (2^L - 1).
  BigInt v = 0;
  for (Digit d : sequence.period) {
    if (d > 1) throw std::invalid_argument("binary sequence digits must be 0 or 1");
    v = 2 * v + d;
  }
  BigInt repeat = (BigInt(1) << sequence.period.size()) - 1;
  return value + weight * 2 * Rational(v, repeat);
}

bool dyadic_twins(const RayCode& f, const RayCode& g) {
  if (!f.is_periodic() || !g.is_periodic()) return false;
  const Digit m = min_digit(f);
  if (min_digit(g) != m) return false;
  auto shape = [&](const RayCode& ray, Digit last, Digit repeat) {
    const Digits& pre = ray.preamble();
    return !pre.empty() && pre.back() == last && ray.periodic_tail().period == Digits{repeat};
  };
  auto twins = [&](const RayCode& hi, const RayCode& lo) {
    if (!shape(hi, m + 1, m) || !shape(lo, m, m + 1)) return false;
    const Digits& a = hi.preamble();
    const Digits& b = lo.preamble();
    return a.size() == b.size() && std::equal(a.begin(), a.end() - 1, b.begin());
  };
  return twins(f, g) || twins(g, f);
}

NMapValue n_map(const RayCode& ray, unsigned bits) {
  require_valid(ray);
  const Digit m = min_digit(ray);
  auto residual = [m](Digits digits) {
    for (Digit& d : digits) d = static_cast<Digit>(d - m);
    return digits;
  };
  if (ray.is_periodic()) {
    return Rational(m) + b_map({residual(ray.preamble()), residual(ray.periodic_tail().period)});
  }
  RayWalker walker(ray);
  Rational value = 0;
  Rational weight(1, 2);
  for (unsigned i = 0; i < bits; ++i) {
    if (walker.step() != m) value += weight;
    weight /= 2;
  }
  return RationalInterval{Rational(m) + value, Rational(m) + value + 2 * weight};
}

RayCode digitize(const PlaneDirection& direction) {
  const int sx = direction.x.sign();
  const int sy = direction.y.sign();
  if (sx == 0 && sy == 0) throw std::invalid_argument("cannot digitize the zero direction");
  int quadrant;
  if (sx >= 0 && sy >= 0) {
    quadrant = 1;
  } else if (sx < 0 && sy >= 0) {
    quadrant = 2;
  } else if (sx <= 0) {
    quadrant = 3;
  } else {
    quadrant = 4;
  }
  RayCode raw({}, SturmianTail::make(surd_abs(direction.x), surd_abs(direction.y), quadrant));
  auto canonical = canonicalize(raw);
  if (!canonical) throw std::logic_error("digitized staircase is not geodesic");
  return *canonical;
}

PlaneDirection direction_of(const RayCode& ray) {
  require_valid(ray);
  if (ray.is_periodic()) {
    const Digits& period = ray.periodic_tail().period;
    SurdVector disp = preamble_displacement(period);
    Surd length = Surd(BigInt(period.size()));
    return {disp.x / length, disp.y / length};
  }
  const SturmianTail& tail = ray.sturmian_tail();
  return {tail.dx * Surd(horizontal_sign(tail.quadrant)),
          tail.dy * Surd(vertical_sign(tail.quadrant))};
}

std::optional<std::uint64_t> divergence_time(const RayCode& f, const RayCode& g,
                                             std::int64_t threshold, std::uint64_t horizon) {
  if (threshold < 0) return 0;
  RayWalker wf(f);
  RayWalker wg(g);
  for (std::uint64_t t = 1; t <= horizon; ++t) {
    wf.step();
    wg.step();
    if (lockstep_distance(wf, wg) > threshold) return t;
  }
  return std::nullopt;
}

AsymptoticVerdict are_asymptotic(const RayCode& f, const RayCode& g, std::int64_t threshold,
                                 std::uint64_t max_horizon) {
  require_valid(f, "first ray");
  require_valid(g, "second ray");
  if (f == g) return Asymptotic{0, true};
  const PlaneDirection df = direction_of(f);
  const PlaneDirection dg = direction_of(g);

  if (!(df == dg)) {
    // d(t) >= t*|df - dg|_1 - dev(f) - dev(g), so a witness exists by this time.
    Rational slack(BigInt(threshold + deviation_bound(f) + deviation_bound(g)));
    BigInt certain = ceil(slack / separation_lower_bound(df, dg)) + 1;
    std::uint64_t horizon = certain > max_horizon ? max_horizon : certain.convert_to<std::uint64_t>();
    auto witness = divergence_time(f, g, threshold, horizon);
    if (!witness) return Unknown{horizon};
    RayWalker wf(f);
    RayWalker wg(g);
    for (std::uint64_t t = 0; t < *witness; ++t) {
      wf.step();
      wg.step();
    }
    return Divergent{*witness, threshold, lockstep_distance(wf, wg)};
  }

  const std::uint64_t transient = std::max(f.preamble().size(), g.preamble().size());
  if (f.is_periodic() && g.is_periodic()) {
    // The difference sequence repeats with the combined period after both preambles.
    const BigInt window = BigInt(transient) + boost::multiprecision::lcm(
                                                  BigInt(f.periodic_tail().period.size()),
                                                  BigInt(g.periodic_tail().period.size()));
    if (window <= max_horizon) {
      return Asymptotic{max_distance_over(f, g, window.convert_to<std::uint64_t>()), true};
    }
    return Asymptotic{deviation_bound(f) + deviation_bound(g), false};
  }

  // Equal irrational directions: both tails are the same staircase up to offsets.
  SurdVector cf = staircase_offset(f, df);
  SurdVector cg = staircase_offset(g, dg);
  Surd tail_bound = l1_norm(cf.x - cg.x, cf.y - cg.y) + Surd(4);
  BigInt bound = tail_bound.ceil() - 1;
  BigInt head = max_distance_over(f, g, transient);
  return Asymptotic{std::max(bound, head), false};
}

std::string describe(const AsymptoticVerdict& verdict) {
  std::ostringstream out;
  if (const auto* a = std::get_if<Asymptotic>(&verdict)) {
    out << "asymptotic, bound " << a->bound << (a->attained ? " (attained)" : "");
  } else if (const auto* d = std::get_if<Divergent>(&verdict)) {
    out << "divergent, d = " << d->distance << " > " << d->threshold << " at t = " << d->witness;
  } else {
    out << "unknown within horizon " << std::get<Unknown>(verdict).horizon;
  }
  return out.str();
}

bool same_closed_quadrant(const RayCode& f, const RayCode& g) {
  bool uses[4] = {false, false, false, false};
  auto mark = [&](const RayCode& ray) {
    for (Digit d : ray.preamble()) uses[d % 4] = true;
    if (ray.is_periodic()) {
      for (Digit d : ray.periodic_tail().period) uses[d % 4] = true;
    } else {
      uses[horizontal_digit(ray.sturmian_tail().quadrant) % 4] = true;
      uses[vertical_digit(ray.sturmian_tail().quadrant) % 4] = true;
    }
  };
  mark(f);
  mark(g);
  return !(uses[kEast] && uses[kWest]) && !(uses[kNorth] && uses[kSouth]);
}

RayCode splice(const RayCode& f, const RayCode& g, std::uint64_t s) {
  require_valid(f, "first ray");
  require_valid(g, "second ray");
  if (!same_closed_quadrant(f, g)) {
    throw QuadrantMismatch("cannot splice " + to_string(f) + " and " + to_string(g) +
                           ": the rays lie in different quadrants");
  }
  Digits preamble;
  preamble.reserve(s);
  RayWalker walker(f);
  for (std::uint64_t i = 0; i < s; ++i) preamble.push_back(walker.step());

  const Digits& g_preamble = g.preamble();
  RayCode::Tail tail = g.tail();
  if (s <= g_preamble.size()) {
    preamble.insert(preamble.end(), g_preamble.begin() + static_cast<std::ptrdiff_t>(s),
                    g_preamble.end());
  } else {
    const std::uint64_t shift = s - g_preamble.size();
    if (auto* periodic = std::get_if<PeriodicTail>(&tail)) {
      auto& period = periodic->period;
      std::rotate(period.begin(),
                  period.begin() + static_cast<std::ptrdiff_t>(shift % period.size()), period.end());
    } else {
      std::get<SturmianTail>(tail).skip += shift;
    }
  }
  auto canonical = canonicalize(RayCode(std::move(preamble), std::move(tail)));
  if (!canonical) throw std::logic_error("splice of same-quadrant rays is not geodesic");
  return *canonical;
}

BallQuery::BallQuery(Rational a_, Rational b_, Rational epsilon_)
    : a(std::move(a_)), b(std::move(b_)), epsilon(std::move(epsilon_)) {
  if (a < 0) throw std::invalid_argument("compact interval must lie in [0, inf)");
  if (b < a) throw std::invalid_argument("compact interval needs a <= b");
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
}

bool ball_contains(const RayCode& center, const RayCode& candidate, const BallQuery& query) {
  require_valid(center, "center ray");
  require_valid(candidate, "candidate ray");
  const BigInt first = ceil(query.a);
  const BigInt last = floor(query.b);
  if (last > BigInt(kMaxWitnessHorizon) * 100) throw std::invalid_argument("compact interval too long");
  RayWalker wf(center);
  RayWalker wg(candidate);
  for (BigInt t = 0; t <= last; ++t) {
    if (t >= first && Rational(lockstep_distance(wf, wg)) >= query.epsilon) return false;
    wf.step();
    wg.step();
  }
  return true;
}

bool TopologyReport::passed() const {
  return !steps.empty() &&
         std::all_of(steps.begin(), steps.end(), [](const SpliceStep& step) { return step.passed(); });
}

const SpliceStep* TopologyReport::target_step() const {
  for (const auto& step : steps) {
    if (step.role == "target") return &step;
  }
  return nullptr;
}

TopologyReport trivial_topology_demo(const RayCode& f, const RayCode& g, const BallQuery& query,
                                     bool chain_to_target) {
  require_valid(f, "first ray");
  require_valid(g, "second ray");
  const bool direct = same_closed_quadrant(f, g);
  if (!direct && !chain_to_target) {
    throw QuadrantMismatch("rays " + to_string(f) + " and " + to_string(g) +
                           " lie in different quadrants; enable the axis chain to connect them");
  }
  TopologyReport report;
  report.s = ceil(query.b).convert_to<std::uint64_t>();
  report.f = f;
  report.g = g;

  auto make_step = [&](std::string role, const RayCode& center, const RayCode& target) {
    SpliceStep step;
    step.role = std::move(role);
    step.center = center;
    step.target = target;
    step.spliced = splice(center, target, report.s);
    step.in_ball = ball_contains(center, step.spliced, query);
    step.verdict = are_asymptotic(step.spliced, target);
    return step;
  };

  if (direct) report.steps.push_back(make_step("target", f, g));

  // Each axis ray is spliced into the neighbourhood of the previous one.
  const int m = min_digit(f);
  RayCode center = f;
  bool reached = direct;
  for (int k = 1; k <= 4; ++k) {
    RayCode axis = RayCode::axis(m + k);
    report.steps.push_back(make_step("axis", center, axis));
    if (!reached && same_closed_quadrant(axis, g)) {
      report.steps.push_back(make_step("target-via-axis", axis, g));
      reached = true;
    }
    center = axis;
  }
  return report;
}

}  // namespace latbound
