// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "cli.hpp"
#include "latbound/cone.hpp"
#include "latbound/ell1_plane.hpp"
#include "latbound/lattice.hpp"
#include "latbound/quasi.hpp"
#include "latbound/rays.hpp"
#include "support/oracles.hpp"

#include <json.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace latbound;

namespace {

struct Check {
  bool ok = true;
  std::string detail;
  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct CliOutcome {
  int code;
  std::string out;
};

CliOutcome cli_call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str() + err.str()};
}

BigInt binomial(int n, int k) {
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

RayCode code(const char* literal) { return *canonicalize(parse_ray(literal)); }

// 1
Check geodesic_counting() {
  Check c;
  auto count = cli_call({"count", "0,0", "3,3"});
  auto metric = cli_call({"metric", "0,0", "3,3"});
  c.require(count.code == 0 && count.out == "20\n", "count 0,0 3,3 printed " + count.out);
  c.require(metric.code == 0 && metric.out == "6\n", "metric 0,0 3,3 printed " + metric.out);
  for (int dx = -12; dx <= 12; ++dx) {
    for (int dy = -12; dy <= 12; ++dy) {
      int n = std::abs(dx) + std::abs(dy);
      if (n > 12) continue;
      LatticePoint q{dx, dy};
      auto words = enumerate_geodesics({0, 0}, q, kUnlimited);
      BigInt expected = binomial(n, std::abs(dx));
      c.require(BigInt(words.size()) == expected && geodesic_count({0, 0}, q) == expected,
                "enumeration disagrees at " + to_string(q));
    }
  }
  return c;
}

// 2
Check n_map_values() {
  Check c;
  c.require(std::get<Rational>(n_map(RayCode::east())) == 0, "N(east) != 0");
  c.require(std::get<Rational>(n_map(code("(23)"))) == Rational(7, 3), "N((23)) != 7/3");
  c.require(b_map(parse_binary_sequence("(01)")) == Rational(1, 3), "B((01)) != 1/3");
  return c;
}

// 3
Check n_map_collisions() {
  Check c;
  std::map<std::string, RayCode> codes;
  for (int m = 0; m < 4; ++m) {
    for (int pre_len = 0; pre_len <= 4; ++pre_len) {
      for (int per_len = 1; per_len <= 4; ++per_len) {
        for (int pre_bits = 0; pre_bits < (1 << pre_len); ++pre_bits) {
          for (int per_bits = 0; per_bits < (1 << per_len); ++per_bits) {
            Digits pre, per;
            for (int i = 0; i < pre_len; ++i) pre.push_back(static_cast<Digit>(m + ((pre_bits >> i) & 1)));
            for (int i = 0; i < per_len; ++i) per.push_back(static_cast<Digit>(m + ((per_bits >> i) & 1)));
            auto canon = canonicalize(RayCode::periodic(pre, per));
            if (!canon) continue;
            codes.emplace(to_string(*canon), *canon);
          }
        }
      }
    }
  }
  std::map<Rational, std::vector<const RayCode*>> by_value;
  for (const auto& [text, ray] : codes) by_value[std::get<Rational>(n_map(ray))].push_back(&ray);
  std::size_t collisions = 0;
  for (const auto& [value, group] : by_value) {
    if (group.size() == 1) continue;
    c.require(group.size() == 2, "three codes share N = " + to_string(value));
    if (group.size() != 2) continue;
    ++collisions;
    const RayCode& f = *group[0];
    const RayCode& g = *group[1];
    int m = std::min(min_digit(f), min_digit(g));
    bool twins = oracle::twin_streams(oracle::expand(f, 40), oracle::expand(g, 40), m);
    c.require(twins && dyadic_twins(f, g), "non-twin collision " + to_string(f) + " " + to_string(g));
  }
  c.require(collisions > 0, "scan found no collisions at all");
  c.detail = c.ok ? std::to_string(codes.size()) + " codes, " + std::to_string(collisions) + " twin collisions"
                  : c.detail;
  return c;
}

// 4
Check floor_certificate() {
  Check c;
  SampleSpec spec{-1000, 1000, 100000, 20240601};
  auto report = check_embedding(QIMap::floor(), QIParams(2, 2), spec);
  c.require(report.checked == 100000 && report.violations.empty(), "sampled violations");
  for (const auto& pair : sample_pairs(QIMap::floor(), spec)) {
    Rational dx = abs(pair.p.x - pair.q.x), dy = abs(pair.p.y - pair.q.y);
    Rational taxi = dx + dy;
    Rational dz(abs(floor(pair.p.x) - floor(pair.q.x)) + abs(floor(pair.p.y) - floor(pair.q.y)));
    Rational d2 = dx * dx + dy * dy;
    // upper: d_Z <= |dx| + |dy| + 2 <= sqrt(2) d + 2 <= 2 d + 2
    c.require(dz <= taxi + 2 && taxi * taxi <= 2 * d2, "upper chain fails");
    // lower: d <= |dx| + |dy| <= d_Z + 2
    c.require(d2 <= taxi * taxi && taxi <= dz + 2, "lower chain fails");
  }
  return c;
}

// 5
Check best_constants() {
  Check c;
  std::int64_t first = 1;
  while (!(first > 1 && 25 * (2 * first - 2) * (2 * first - 2) > 98 * first * first)) ++first;
  auto w = find_violation(QIMap::floor(), QIParams(Rational(7, 5), 2), SearchStrategy::DiagonalRay, 1000);
  c.require(w.has_value(), "no witness for k = 7/5");
  if (w) {
    c.require(w->pair.p == PlanePoint{} && w->pair.q == PlanePoint{Rational(first), Rational(first)},
              "witness is not the first diagonal pair");
  }
  c.require(std::abs(first - 101) <= 1, "first diagonal witness far from 101");
  auto out = cli_call({"qi-violate", "--k", "7/5", "--c", "2", "--strategy", "diagonal-ray", "--budget", "1000"});
  c.require(out.code == 0 && out.out.find(std::to_string(first) + "," + std::to_string(first)) != std::string::npos,
            "CLI witness missing: " + out.out);
  for (auto s : {SearchStrategy::DiagonalRay, SearchStrategy::Grid, SearchStrategy::Random}) {
    c.require(!find_violation(QIMap::floor(), QIParams(2, 2), s, s == SearchStrategy::Grid ? 8 : 1000, 1),
              "witness found for (2,2)");
  }
  if (c.ok) c.detail = "first witness n = " + std::to_string(first);
  return c;
}

// 6
Check roundtrip() {
  Check c;
  std::vector<PlanePoint> samples;
  for (auto& pair : sample_pairs(QIMap::floor(), {-1000, 1000, 50000, 77})) {
    samples.push_back(pair.p);
    samples.push_back(pair.q);
  }
  Rational worst = roundtrip_displacement(samples);
  c.require(samples.size() == 100000 && worst < 2, "displacement reached 2");
  std::vector<PlanePoint> crafted{{Rational(99, 100), Rational(99, 100)}};
  c.require(roundtrip_displacement(crafted) > Rational(9, 5), "crafted sample not above 9/5");
  return c;
}

// 7
Check unit_speed_and_splice() {
  Check c;
  oracle::Gen gen(7007);
  for (int i = 0; i < 100 && c.ok; ++i) {
    RayCode r = gen.any_ray();
    c.require(validate(r), "invalid ray " + to_string(r));
    RayWalker walker(r);
    std::vector<oracle::Offset> pts{{0, 0}};
    for (int t = 1; t <= 200; ++t) {
      walker.step();
      pts.push_back({walker.x(), walker.y()});
    }
    for (std::size_t s = 0; s <= 200; ++s) {
      for (std::size_t t = s; t <= 200; ++t) {
        auto gap = std::abs(pts[s].first - pts[t].first) + std::abs(pts[s].second - pts[t].second);
        if (gap != static_cast<std::int64_t>(t - s)) {
          c.require(false, "unit speed fails on " + to_string(r));
        }
      }
    }
  }
  for (int i = 0; i < 100 && c.ok; ++i) {
    int q = static_cast<int>(gen.integer(1, 4));
    RayCode f = gen.periodic_ray(q), g = gen.periodic_ray(q);
    auto s = static_cast<std::uint64_t>(gen.integer(0, 40));
    RayCode h = splice(f, g, s);
    auto verdict = are_asymptotic(h, g);
    c.require(std::holds_alternative<Asymptotic>(verdict), "splice not asymptotic to g");
    if (!c.ok) break;
    BigInt bound = std::get<Asymptotic>(verdict).bound;
    std::uint64_t period = h.preamble().size() + h.periodic_tail().period.size() +
                           g.preamble().size() + g.periodic_tail().period.size();
    std::uint64_t horizon = s + 10 * period;
    std::string he = oracle::expand(h, horizon), ge = oracle::expand(g, horizon), fe = oracle::expand(f, horizon);
    for (std::uint64_t t = 0; t < s; ++t) {
      if ((he[t] - '0') % 4 != (fe[t] - '0') % 4) c.require(false, "prefix disagrees with f");
    }
    for (std::uint64_t t = 0; t <= horizon; ++t) {
      auto [hx, hy] = oracle::walk(he, t);
      auto [gx, gy] = oracle::walk(ge, t);
      if (t > s && (he[t - 1] - '0') % 4 != (ge[t - 1] - '0') % 4) c.require(false, "steps after s differ from g");
      if (BigInt(std::abs(hx - gx) + std::abs(hy - gy)) > bound) c.require(false, "certified bound exceeded");
    }
  }
  return c;
}

// 8
Check trivial_topology() {
  Check c;
  auto axes_reached = [](const TopologyReport& report) {
    std::set<int> seen;
    for (const auto& step : report.steps) {
      if (step.role == "axis") seen.insert(digit_at(step.target, 1) % 4);
    }
    return seen.size();
  };
  auto check_report = [&](const TopologyReport& report, const RayCode& f, const RayCode& g, const BallQuery& q) {
    std::string who = to_string(f) + " -> " + to_string(g);
    c.require(report.passed(), "demo step failed for " + who);
    c.require(axes_reached(report) == 4, "axis chain incomplete for " + who);
    bool reached_g = false;
    for (const auto& step : report.steps) {
      if (step.target == g && step.role != "axis") {
        reached_g = true;
        c.require(ball_contains(step.center, step.spliced, q), "g_s outside the ball for " + who);
        c.require(std::holds_alternative<Asymptotic>(are_asymptotic(step.spliced, g)), "g_s not ~ g for " + who);
      }
    }
    c.require(reached_g, "g never spliced for " + who);
  };
  BallQuery defaults(0, 5, 1);
  check_report(trivial_topology_demo(code("(01)"), code("(001)"), defaults), code("(01)"), code("(001)"), defaults);
  oracle::Gen gen(808);
  for (int i = 0; i < 20; ++i) {
    RayCode f = gen.any_ray(), g = gen.any_ray();
    Rational b = gen.rational(0, 30);
    BallQuery q(gen.rational(0, 1) * b, b, gen.rational(0, 2) + Rational(1, 16));
    check_report(trivial_topology_demo(f, g, q, true), f, g, q);
  }
  auto cli = cli_call({"demo", "trivial-topology"});
  c.require(cli.code == 0 && cli.out.find("FAIL") == std::string::npos, "CLI demo reported a failure");
  return c;
}

// 9
Check divergence() {
  Check c;
  auto v = are_asymptotic(RayCode::east(), code("(1)"), 10);
  c.require(std::holds_alternative<Divergent>(v) && std::get<Divergent>(v).witness == 6 &&
                std::get<Divergent>(v).distance == 12,
            "east vs north: " + describe(v));
  c.require(divergence_time(RayCode::east(), code("(1)"), 10, 100) == 6u, "divergence_time(east, north) != 6");
  std::vector<std::pair<int, int>> dirs;
  for (int p = -3; p <= 3; ++p) {
    for (int q = -3; q <= 3; ++q) {
      if ((p != 0 || q != 0) && std::gcd(p, q) == 1) dirs.push_back({p, q});
    }
  }
  std::vector<RayCode> rays;
  for (auto [p, q] : dirs) rays.push_back(digitize({p, q}));
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = i + 1; j < rays.size(); ++j) {
      auto verdict = are_asymptotic(rays[i], rays[j]);
      if (!std::holds_alternative<Divergent>(verdict)) {
        c.require(false, "not divergent: " + to_string(rays[i]) + " " + to_string(rays[j]));
        continue;
      }
      auto d = std::get<Divergent>(verdict);
      std::string a = oracle::expand(rays[i], d.witness), b = oracle::expand(rays[j], d.witness);
      for (std::uint64_t t = 0; t <= d.witness; ++t) {
        auto [ax, ay] = oracle::walk(a, t);
        auto [bx, by] = oracle::walk(b, t);
        std::int64_t dist = std::abs(ax - bx) + std::abs(ay - by);
        bool ok = t < d.witness ? dist <= d.threshold : (dist > d.threshold && dist == d.distance);
        if (!ok) c.require(false, "witness not confirmed for " + to_string(rays[i]) + " " + to_string(rays[j]));
      }
      ++pairs;
    }
  }
  if (c.ok) c.detail = std::to_string(pairs) + " divergent pairs confirmed";
  return c;
}

// 10
Check ell1_plane() {
  Check c;
  oracle::Gen gen(1010);
  for (int i = 0; i < 200; ++i) {
    Polyline p = i % 2 == 0 ? gen.monotone_polyline(gen.coin()) : gen.free_polyline();
    Rational length = 0;
    for (std::size_t k = 1; k < p.vertices.size(); ++k) {
      PlanePoint d = p.vertices[k] - p.vertices[k - 1];
      length += abs(d.x) + abs(d.y);
    }
    if (p.direction) {
      length += abs(Rational(p.direction->dx)) + abs(Rational(p.direction->dy));
    }
    PlanePoint end = p.vertices.back();
    if (p.direction) end = end + PlanePoint{Rational(p.direction->dx), Rational(p.direction->dy)};
    bool by_length = length == abs(end.x) + abs(end.y);
    bool geodesic = is_geodesic_polyline(p);
    c.require(geodesic == has_monotone_coordinates(p) && geodesic == by_length,
              "three-way disagreement on " + to_string(p));
    if (geodesic) c.require(!check_monotone_commitment(p).has_value(), "geodesic rejected: " + to_string(p));
  }
  for (int i = 0; i < 50; ++i) {
    auto [p, expected] = gen.backtracking_polyline();
    auto got = check_monotone_commitment(p);
    c.require(got == expected, "wrong violation time on " + to_string(p));
  }
  return c;
}

// 11
Check cone() {
  Check c;
  BigInt digits("314159265358979323846264338327950288");
  BigInt scale = boost::multiprecision::pow(BigInt(10), 35);
  for (const Rational& eps : {Rational(1), Rational(1, 10)}) {
    ConeLengths l = cone_lengths(eps);
    c.require(!l.extendable, "extendable for eps = " + to_string(eps));
    c.require(l.through.lo * l.through.lo <= 104 * eps * eps && 104 * eps * eps <= l.through.hi * l.through.hi,
              "through enclosure misses 2 sqrt(26) eps");
    c.require(l.around.lo <= eps * Rational(digits + 1, scale) && eps * Rational(digits - 1, scale) <= l.around.hi,
              "around enclosure misses pi eps");
    c.require(l.around.hi < l.through.lo, "enclosures overlap");
  }
  auto cli = cli_call({"--format", "json", "demo", "cone", "--eps", "1/10"});
  c.require(cli.code == 0 && nlohmann::json::parse(cli.out)["output"]["extendable"] == false, "CLI cone demo");
  return c;
}

// 12
Check genset_invariance() {
  Check c;
  GeneratingSet s2({{1, 0}, {1, 1}});
  auto k = generating_set_lipschitz(GeneratingSet::standard(), s2, 64);
  auto standard = oracle::word_lengths({{1, 0}, {0, 1}}, 20);
  auto other = oracle::word_lengths({{1, 0}, {1, 1}}, 40);
  std::vector<oracle::Offset> ball;
  for (int x = -10; x <= 10; ++x) {
    for (int y = -10; y <= 10; ++y) {
      if (std::abs(x) + std::abs(y) <= 10) ball.push_back({x, y});
    }
  }
  std::size_t checked = 0;
  for (auto [px, py] : ball) {
    for (auto [qx, qy] : ball) {
      oracle::Offset d{qx - px, qy - py};
      std::int64_t ds = standard.at(d), d2 = other.at(d);
      c.require(ds <= k.n * d2 && d2 <= k.m * ds, "Lipschitz inequality fails");
      ++checked;
    }
  }
  if (c.ok) {
    c.detail = "(m, n) = (" + std::to_string(k.m) + ", " + std::to_string(k.n) + "), " + std::to_string(checked) +
               " pairs";
  }
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    std::function<Check()> run;
    double limit_ms;
  };
  const std::vector<Criterion> criteria = {
      {1, "geodesic counting", geodesic_counting, 1000},
      {2, "N-map exact values", n_map_values, 0},
      {3, "N-map collision law", n_map_collisions, 10000},
      {4, "floor-map certificate", floor_certificate, 30000},
      {5, "best-constant evidence", best_constants, 0},
      {6, "round-trip bound", roundtrip, 0},
      {7, "unit speed and splice", unit_speed_and_splice, 0},
      {8, "trivial-topology demo", trivial_topology, 5000},
      {9, "divergence", divergence, 0},
      {10, "l1-plane geodesics", ell1_plane, 0},
      {11, "cone demo", cone, 0},
      {12, "generating-set invariance", genset_invariance, 0},
  };
  int failures = 0;
  for (const auto& criterion : criteria) {
    auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = criterion.run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (result.ok && criterion.limit_ms > 0 && ms > criterion.limit_ms) {
      result.ok = false;
      result.detail = "over the time limit of " + std::to_string(static_cast<int>(criterion.limit_ms)) + " ms";
    }
    failures += !result.ok;
    std::cout << (result.ok ? "PASS" : "FAIL") << " [" << criterion.id << "] " << criterion.name << " ("
              << static_cast<long>(ms) << " ms)";
    if (!result.detail.empty()) std::cout << ": " << result.detail;
    std::cout << "\n";
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
