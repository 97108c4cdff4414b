#pragma once

#include "latbound/plane_point.hpp"
#include "latbound/ray_code.hpp"
#include "latbound/rays.hpp"

#include <string>
#include <vector>

namespace latbound {

/// Integer window [xmin, xmax] x [ymin, ymax] of the plane.
struct SvgWindow {
  std::int64_t xmin = -1;
  std::int64_t ymin = -1;
  std::int64_t xmax = 10;
  std::int64_t ymax = 10;
};

struct SvgPath {
  std::string label;
  std::string color;
  std::vector<PlanePoint> points;
  bool dashed = false;
};

struct SvgScene {
  SvgWindow window;
  std::vector<SvgPath> paths;  // drawn in order
};

/// Lattice points point_at(ray, 0..t_max).
std::vector<PlanePoint> ray_points(const RayCode& ray, std::uint64_t t_max);

/// The Euclidean ray from the origin along `direction`, clipped to the window.
std::vector<PlanePoint> reference_line(const PlaneDirection& direction, const SvgWindow& window);

/// Deterministic SVG document: fixed viewBox, grid, then paths in order, then a legend.
/// Throws std::invalid_argument for an empty or oversized window.
std::string render_svg(const SvgScene& scene);

/// Color for the i-th path of a figure.
std::string palette(std::size_t i);

}  // namespace latbound
