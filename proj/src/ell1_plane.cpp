#include "latbound/ell1_plane.hpp"

#include "latbound/rays.hpp"

#include <algorithm>
#include <stdexcept>

namespace latbound {

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  return text;
}

PlanePoint direction_point(const FinalDirection& d) { return {Rational(d.dx), Rational(d.dy)}; }

// Displacements of every leg, the final direction included.
std::vector<PlanePoint> legs(const Polyline& path) {
  std::vector<PlanePoint> out;
  for (std::size_t i = 1; i < path.vertices.size(); ++i) {
    out.push_back(path.vertices[i] - path.vertices[i - 1]);
  }
  if (path.direction) out.push_back(direction_point(*path.direction));
  return out;
}

struct SignUse {
  bool east = false, west = false, north = false, south = false;
  void add(const PlanePoint& leg) {
    east |= leg.x > 0;
    west |= leg.x < 0;
    north |= leg.y > 0;
    south |= leg.y < 0;
  }
  bool monotone() const { return !(east && west) && !(north && south); }
};

bool positively_parallel(const PlanePoint& u, const PlanePoint& v) {
  return u.x * v.y == u.y * v.x && u.x * v.x + u.y * v.y > 0;
}

// Parameters u in [0, 1] (or [0, inf) when `unbounded`) with a + u*b > 0 for both rows.
// Returns the infimum when the set is nonempty.
std::optional<Rational> open_entry(const PlanePoint& start, const PlanePoint& delta,
                                   bool unbounded) {
  Rational lo = 0;
  std::optional<Rational> hi;
  if (!unbounded) hi = Rational(1);
  for (auto [a, b] : {std::pair{start.x, delta.x}, std::pair{start.y, delta.y}}) {
    if (b == 0) {
      if (a <= 0) return std::nullopt;
      continue;
    }
    Rational root = -a / b;
    if (b > 0) {
      lo = std::max(lo, root);
    } else {
      hi = hi ? std::min(*hi, root) : root;
    }
  }
  if (hi && !(lo < *hi)) return std::nullopt;
  return lo;
}

}  // namespace

void Polyline::check() const {
  if (vertices.empty() || !(vertices.front() == PlanePoint{})) {
    throw std::invalid_argument("polyline must start at the origin 0,0");
  }
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (vertices[i] == vertices[i - 1]) {
      throw std::invalid_argument("polyline repeats vertex " + to_string(vertices[i]));
    }
  }
  if (direction && direction->dx == 0 && direction->dy == 0) {
    throw std::invalid_argument("final direction must be nonzero");
  }
}

std::vector<Rational> Polyline::vertex_times() const {
  std::vector<Rational> times{Rational(0)};
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    times.push_back(times.back() + ell1_distance(vertices[i - 1], vertices[i]));
  }
  return times;
}

Rational Polyline::finite_length() const { return vertex_times().back(); }

PlanePoint Polyline::at(const Rational& t) const {
  if (t < 0) throw std::out_of_range("negative path parameter");
  Rational start = 0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    Rational len = ell1_distance(vertices[i - 1], vertices[i]);
    if (t <= start + len) {
      return vertices[i - 1] + ((t - start) / len) * (vertices[i] - vertices[i - 1]);
    }
    start += len;
  }
  if (!direction) {
    if (t == start) return vertices.back();
    throw std::out_of_range("parameter " + to_string(t) + " is past the end of the path");
  }
  PlanePoint d = direction_point(*direction);
  Rational norm = abs(d.x) + abs(d.y);
  return vertices.back() + ((t - start) / norm) * d;
}

Polyline parse_polyline(std::string_view text) {
  Polyline path;
  std::string_view body = text;
  auto arrow = text.find('>');
  if (arrow != std::string_view::npos) {
    std::string_view dir = trim(text.substr(arrow + 1));
    auto slash = dir.find('/');
    if (slash == std::string_view::npos) {
      throw std::invalid_argument("final direction must read '>dx/dy', got '" + std::string(dir) + "'");
    }
    path.direction = FinalDirection{parse_integer(trim(dir.substr(0, slash))),
                                    parse_integer(trim(dir.substr(slash + 1)))};
    body = text.substr(0, arrow);
  }
  body = trim(body);
  while (!body.empty()) {
    auto semi = body.find(';');
    path.vertices.push_back(parse_plane_point(trim(body.substr(0, semi))));
    if (semi == std::string_view::npos) break;
    body = body.substr(semi + 1);
  }
  path.check();
  return path;
}

std::string to_string(const Polyline& path) {
  std::string out;
  for (std::size_t i = 0; i < path.vertices.size(); ++i) {
    if (i > 0) out += ';';
    out += to_string(path.vertices[i]);
  }
  if (path.direction) {
    out += " >" + to_string(path.direction->dx) + "/" + to_string(path.direction->dy);
  }
  return out;
}

Polyline simplify(const Polyline& path) {
  Polyline out;
  out.direction = path.direction;
  for (const auto& v : path.vertices) {
    if (!out.vertices.empty() && out.vertices.back() == v) continue;
    std::size_t n = out.vertices.size();
    if (n >= 2 && positively_parallel(out.vertices[n - 1] - out.vertices[n - 2], v - out.vertices[n - 1])) {
      out.vertices.back() = v;
    } else {
      out.vertices.push_back(v);
    }
  }
  if (out.direction) {
    PlanePoint d = direction_point(*out.direction);
    while (out.vertices.size() >= 2 &&
           positively_parallel(out.vertices.back() - out.vertices[out.vertices.size() - 2], d)) {
      out.vertices.pop_back();
    }
  }
  return out;
}

Rational ell1_distance(const PlanePoint& p, const PlanePoint& q) {
  return abs(p.x - q.x) + abs(p.y - q.y);
}

bool is_geodesic_polyline(const Polyline& path) {
  std::vector<PlanePoint> vs = path.vertices;
  if (path.direction) vs.push_back(vs.back() + direction_point(*path.direction));
  Rational length = 0;
  for (std::size_t i = 1; i < vs.size(); ++i) length += ell1_distance(vs[i - 1], vs[i]);
  return length == ell1_distance(vs.front(), vs.back());
}

bool has_monotone_coordinates(const Polyline& path) {
  SignUse use;
  for (const auto& leg : legs(path)) use.add(leg);
  return use.monotone();
}

std::optional<Rational> check_monotone_commitment(const Polyline& path) {
  path.check();
  std::optional<Rational> first;
  const auto times = path.vertex_times();
  for (int sx : {1, -1}) {
    for (int sy : {1, -1}) {
      auto reflect = [&](const PlanePoint& p) { return PlanePoint{sx * p.x, sy * p.y}; };
      bool committed = false;
      const std::size_t n = path.vertices.size();
      const std::size_t segments = n - 1 + (path.direction ? 1 : 0);
      for (std::size_t i = 0; i < segments; ++i) {
        bool unbounded = i + 1 == n;
        PlanePoint start = reflect(path.vertices[i]);
        PlanePoint delta = unbounded ? reflect(direction_point(*path.direction))
                                     : reflect(path.vertices[i + 1]) - start;
        Rational length = abs(delta.x) + abs(delta.y);
        bool retreats = delta.x < 0 || delta.y < 0;
        std::optional<Rational> hit;
        if (committed && retreats) {
          hit = times[i];
        } else if (!committed) {
          if (auto entry = open_entry(start, delta, unbounded)) {
            if (retreats) hit = times[i] + *entry * length;
            committed = true;
          }
        }
        if (hit) {
          if (!first || *hit < *first) first = hit;
          break;
        }
      }
    }
  }
  return first;
}

PlaneSplice splice_plane(const Polyline& f, const Polyline& g, const Rational& b) {
  f.check();
  g.check();
  if (b < 0) throw std::invalid_argument("splice time must be nonnegative");
  if (!f.is_ray() || !g.is_ray()) throw std::invalid_argument("splice_plane needs rays (a final direction)");
  if (!is_geodesic_polyline(f) || !is_geodesic_polyline(g)) {
    throw std::invalid_argument("splice_plane needs geodesic rays");
  }
  SignUse use;
  for (const auto& leg : legs(f)) use.add(leg);
  for (const auto& leg : legs(g)) use.add(leg);
  if (!use.monotone()) {
    throw QuadrantMismatch("rays " + to_string(f) + " and " + to_string(g) +
                           " do not lie in one closed quadrant");
  }

  const PlanePoint fb = f.at(b);
  const PlanePoint shift = fb - g.at(b);
  Polyline out;
  out.direction = g.direction;
  const auto f_times = f.vertex_times();
  for (std::size_t i = 0; i < f.vertices.size() && f_times[i] < b; ++i) {
    out.vertices.push_back(f.vertices[i]);
  }
  out.vertices.push_back(fb);
  const auto g_times = g.vertex_times();
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (g_times[i] > b) out.vertices.push_back(g.vertices[i] + shift);
  }

  std::vector<Rational> probes{Rational(0), b};
  for (const auto& t : f_times) {
    if (t <= b) probes.push_back(t);
  }
  for (const auto& t : g_times) {
    if (t <= b) probes.push_back(t);
  }
  Rational bound = 0;
  for (const auto& t : probes) bound = std::max(bound, ell1_distance(f.at(t), g.at(t)));
  return {simplify(out), bound};
}

RayCode project_to_lattice(const Polyline& ray) {
  ray.check();
  if (!ray.is_ray()) throw std::invalid_argument("project needs a ray with a final direction");
  if (!is_geodesic_polyline(ray)) {
    throw std::invalid_argument("path " + to_string(ray) + " is not geodesic");
  }
  SignUse use;
  for (const auto& leg : legs(ray)) use.add(leg);
  const int sx = use.west ? -1 : 1;
  const int sy = use.south ? -1 : 1;
  const Digit h = sx > 0 ? kEast : kWest;
  const Digit v = sy > 0 ? kNorth : kSouth;

  struct Event {
    Rational u;
    bool vertical;
  };
  constexpr std::size_t kMaxSteps = 10'000'000;
  Digits walk;
  for (std::size_t i = 1; i < ray.vertices.size(); ++i) {
    PlanePoint p{sx * ray.vertices[i - 1].x, sy * ray.vertices[i - 1].y};
    PlanePoint q{sx * ray.vertices[i].x, sy * ray.vertices[i].y};
    std::vector<Event> events;
    auto crossings = [&](const Rational& from, const Rational& to, bool vertical) {
      for (BigInt n = floor(from) + 1; n <= floor(to); ++n) {
        if (walk.size() + events.size() > kMaxSteps) {
          throw std::invalid_argument("polyline too long to project");
        }
        events.push_back({(Rational(n) - from) / (to - from), vertical});
      }
    };
    crossings(p.x, q.x, false);
    crossings(p.y, q.y, true);
    std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
      return a.u != b.u ? a.u < b.u : (!a.vertical && b.vertical);
    });
    for (const auto& e : events) walk.push_back(e.vertical ? v : h);
  }

  RayCode tail = digitize({Surd(ray.direction->dx), Surd(ray.direction->dy)});
  Digits preamble = walk;
  preamble.insert(preamble.end(), tail.preamble().begin(), tail.preamble().end());
  auto canonical = canonicalize(RayCode(std::move(preamble), tail.tail()));
  if (!canonical) throw std::logic_error("projection produced a backtracking stream");
  return *canonical;
}

}  // namespace latbound
