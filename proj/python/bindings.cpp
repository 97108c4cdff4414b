// Python bindings. Numbers cross the boundary as strings; the package wraps them.

#include "cli.hpp"
#include "latbound/cone.hpp"
#include "latbound/ell1_plane.hpp"
#include "latbound/lattice.hpp"
#include "latbound/quasi.hpp"
#include "latbound/rays.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace latbound;

namespace {

RayCode ray_arg(const std::string& literal) {
  auto canonical = canonicalize(parse_ray(literal));
  if (!canonical) throw std::invalid_argument("'" + literal + "' is not a geodesic ray code");
  return *canonical;
}

py::dict verdict_dict(const AsymptoticVerdict& verdict) {
  py::dict out;
  if (const auto* a = std::get_if<Asymptotic>(&verdict)) {
    out["kind"] = "asymptotic";
    out["bound"] = to_string(a->bound);
    out["attained"] = a->attained;
  } else if (const auto* d = std::get_if<Divergent>(&verdict)) {
    out["kind"] = "divergent";
    out["witness"] = d->witness;
    out["threshold"] = d->threshold;
    out["distance"] = d->distance;
  } else {
    out["kind"] = "unknown";
    out["horizon"] = std::get<Unknown>(verdict).horizon;
  }
  return out;
}

py::dict violation_dict(const Violation& v) {
  py::dict out;
  out["p"] = to_string(v.pair.p);
  out["q"] = to_string(v.pair.q);
  out["side"] = v.side == InequalitySide::Lower ? "lower" : "upper";
  out["margin"] = v.margin;
  return out;
}

QIMap map_arg(const std::string& name, const std::string& gens, const std::string& gens2) {
  if (name == "floor") return QIMap::floor();
  if (name == "inclusion") return QIMap::inclusion();
  if (name == "genset") return QIMap::genset(parse_generating_set(gens), parse_generating_set(gens2));
  throw std::invalid_argument("unknown map '" + name + "'");
}

SearchStrategy strategy_arg(const std::string& name) {
  if (name == "grid") return SearchStrategy::Grid;
  if (name == "diagonal-ray") return SearchStrategy::DiagonalRay;
  if (name == "random") return SearchStrategy::Random;
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

py::tuple interval(const RationalInterval& i) { return py::make_tuple(to_string(i.lo), to_string(i.hi)); }

}  // namespace

PYBIND11_MODULE(_latbound, m) {
  m.doc() = "Word metrics, geodesic rays and quasi-isometries of Z^2";

  m.def("word_metric", [](const std::string& p, const std::string& q) {
    return to_string(word_metric(parse_point(p), parse_point(q)));
  });
  m.def("bfs_metric", [](const std::string& gens, const std::string& p, const std::string& q, std::int64_t cap) {
    return bfs_metric(parse_generating_set(gens), parse_point(p), parse_point(q), cap);
  });
  m.def("geodesic_count", [](const std::string& p, const std::string& q) {
    return to_string(geodesic_count(parse_point(p), parse_point(q)));
  });
  m.def("enumerate_geodesics", [](const std::string& p, const std::string& q, std::size_t limit) {
    std::vector<std::string> out;
    for (const auto& w : enumerate_geodesics(parse_point(p), parse_point(q), limit)) out.push_back(w.digits());
    return out;
  });
  m.def("is_geodesic_word", [](const std::string& word) { return is_geodesic_word(Word(word)); });
  m.def("generating_set_lipschitz", [](const std::string& a, const std::string& b, std::int64_t cap) {
    auto c = generating_set_lipschitz(parse_generating_set(a), parse_generating_set(b), cap);
    return py::make_tuple(c.m, c.n);
  });

  m.def("canonicalize", [](const std::string& ray) { return to_string(ray_arg(ray)); });
  m.def("validate", [](const std::string& ray) { return validate(parse_ray(ray)); });
  m.def("digit_at", [](const std::string& ray, std::uint64_t n) { return static_cast<int>(digit_at(ray_arg(ray), n)); });
  m.def("point_at", [](const std::string& ray, std::uint64_t t) { return to_string(point_at(ray_arg(ray), t)); });
  m.def("n_map", [](const std::string& ray, unsigned bits) -> py::object {
    auto value = n_map(ray_arg(ray), bits);
    if (const auto* exact = std::get_if<Rational>(&value)) return py::str(to_string(*exact));
    return interval(std::get<RationalInterval>(value));
  });
  m.def("b_map", [](const std::string& seq) { return to_string(b_map(parse_binary_sequence(seq))); });
  m.def("digitize", [](const std::string& direction) { return to_string(digitize(parse_direction(direction))); });
  m.def("direction_of", [](const std::string& ray) { return to_string(direction_of(ray_arg(ray))); });
  m.def("are_asymptotic", [](const std::string& f, const std::string& g, std::int64_t threshold) {
    return verdict_dict(are_asymptotic(ray_arg(f), ray_arg(g), threshold));
  });
  m.def("divergence_time", [](const std::string& f, const std::string& g, std::int64_t threshold,
                              std::uint64_t horizon) {
    return divergence_time(ray_arg(f), ray_arg(g), threshold, horizon);
  });
  m.def("splice", [](const std::string& f, const std::string& g, std::uint64_t s) {
    return to_string(splice(ray_arg(f), ray_arg(g), s));
  });
  m.def("ball_contains", [](const std::string& f, const std::string& g, const std::string& a, const std::string& b,
                            const std::string& eps) {
    return ball_contains(ray_arg(f), ray_arg(g), BallQuery(parse_rational(a), parse_rational(b), parse_rational(eps)));
  });

  m.def("floor_map", [](const std::string& p) { return to_string(floor_map(parse_plane_point(p))); });
  m.def("check_embedding", [](const std::string& map, const std::string& k_squared, const std::string& c,
                              const std::vector<std::pair<std::string, std::string>>& pairs,
                              const std::string& gens, const std::string& gens2) {
    std::vector<PointPair> points;
    for (const auto& [p, q] : pairs) points.push_back({parse_plane_point(p), parse_plane_point(q)});
    auto report = check_embedding(map_arg(map, gens, gens2),
                                  QIParams::from_k_squared(parse_rational(k_squared), parse_rational(c)),
                                  std::span<const PointPair>(points));
    py::list violations;
    for (const auto& v : report.violations) violations.append(violation_dict(v));
    py::dict out;
    out["checked"] = report.checked;
    out["violations"] = violations;
    return out;
  });
  m.def("find_violation", [](const std::string& map, const std::string& k_squared, const std::string& c,
                             const std::string& strategy, std::uint64_t budget, std::uint64_t seed) -> py::object {
    auto v = find_violation(map_arg(map, "", ""), QIParams::from_k_squared(parse_rational(k_squared), parse_rational(c)),
                            strategy_arg(strategy), budget, seed);
    if (!v) return py::none();
    return violation_dict(*v);
  });
  m.def("roundtrip_displacement", [](const std::vector<std::string>& points) {
    std::vector<PlanePoint> samples;
    for (const auto& p : points) samples.push_back(parse_plane_point(p));
    return to_string(roundtrip_displacement(samples));
  });

  m.def("ell1_distance", [](const std::string& p, const std::string& q) {
    return to_string(ell1_distance(parse_plane_point(p), parse_plane_point(q)));
  });
  m.def("is_geodesic_polyline", [](const std::string& path) { return is_geodesic_polyline(parse_polyline(path)); });
  m.def("check_monotone_commitment", [](const std::string& path) -> std::optional<std::string> {
    auto t = check_monotone_commitment(parse_polyline(path));
    if (!t) return std::nullopt;
    return to_string(*t);
  });
  m.def("splice_plane", [](const std::string& f, const std::string& g, const std::string& b) {
    auto s = splice_plane(parse_polyline(f), parse_polyline(g), parse_rational(b));
    return py::make_tuple(to_string(s.ray), to_string(s.bound));
  });
  m.def("project_to_lattice", [](const std::string& path) { return to_string(project_to_lattice(parse_polyline(path))); });

  m.def("cone_lengths", [](const std::string& eps) {
    auto c = cone_lengths(parse_rational(eps));
    py::dict out;
    out["through"] = interval(c.through);
    out["around"] = interval(c.around);
    out["extendable"] = c.extendable;
    out["bits"] = c.bits;
    return out;
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
