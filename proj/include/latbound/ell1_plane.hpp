#pragma once

#include "latbound/plane_point.hpp"
#include "latbound/ray_code.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace latbound {

/// Integer direction of the infinite final leg of a plane ray.
struct FinalDirection {
  BigInt dx;
  BigInt dy;
  friend bool operator==(const FinalDirection&, const FinalDirection&) = default;
};

/// Piecewise-linear path in (R^2, l1) starting at the origin, parameterized by l1 arc length.
/// With a final direction it is a ray: after the last vertex it continues along the direction
/// forever.
struct Polyline {
  std::vector<PlanePoint> vertices;
  std::optional<FinalDirection> direction;

  /// Throws std::invalid_argument unless the first vertex is the origin, consecutive vertices
  /// differ and the direction (if any) is nonzero.
  void check() const;

  bool is_ray() const { return direction.has_value(); }
  /// Arc-length parameter of each vertex.
  std::vector<Rational> vertex_times() const;
  /// l1 length of the finite part.
  Rational finite_length() const;
  /// Position at arc length t >= 0. Throws std::out_of_range past the end of a finite path.
  PlanePoint at(const Rational& t) const;

  friend bool operator==(const Polyline&, const Polyline&) = default;
};

/// "0,0;1,1;2,1 >1/0": vertices separated by ';', then an optional final direction ">dx/dy".
Polyline parse_polyline(std::string_view text);
std::string to_string(const Polyline& path);

/// Same path with collinear interior vertices removed (and a last vertex that the final
/// direction continues straight through).
Polyline simplify(const Polyline& path);

Rational ell1_distance(const PlanePoint& p, const PlanePoint& q);

/// Length equals the l1 distance between the endpoints. For a ray, every initial segment.
bool is_geodesic_polyline(const Polyline& path);

/// Both coordinate functions monotone along the path (final direction included).
bool has_monotone_coordinates(const Polyline& path);

/// First time t at which the path moves back toward an axis after having entered an open
/// quadrant earlier, i.e. the infimum of t with f_i(t) < f_i(t0) (in that quadrant's
/// orientation) for some t0 < t where f(t0) lay in the open quadrant. std::nullopt if none.
std::optional<Rational> check_monotone_commitment(const Polyline& path);

struct PlaneSplice {
  Polyline ray;
  Rational bound;  // sup over all t of |ray(t) - g(t)|_1
};

/// f on [0, b], then f(b) + g(t) - g(b). Both inputs must be geodesic rays in one closed
/// quadrant; throws QuadrantMismatch otherwise.
PlaneSplice splice_plane(const Polyline& f, const Polyline& g, const Rational& b);

/// The lattice ray following the floor walk of the finite part (reflected into the quadrant
/// of the path, horizontal step first on lattice hits), then the staircase of the final
/// direction. Throws std::invalid_argument for a non-geodesic path or one without a direction.
RayCode project_to_lattice(const Polyline& ray);

}  // namespace latbound
