#include "latbound/svg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace latbound {

namespace {

constexpr int kScale = 24;   // pixels per lattice unit
constexpr int kMargin = 16;  // pixels
constexpr int kLegendRow = 18;

std::string coord(const Rational& value) { return to_decimal(value, 6); }

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<PlanePoint> ray_points(const RayCode& ray, std::uint64_t t_max) {
  std::vector<PlanePoint> points{PlanePoint{}};
  RayWalker walker(ray);
  for (std::uint64_t t = 0; t < t_max; ++t) {
    walker.step();
    points.push_back({Rational(walker.x()), Rational(walker.y())});
  }
  return points;
}

std::vector<PlanePoint> reference_line(const PlaneDirection& direction, const SvgWindow& window) {
  // presentation only: surd components are replaced by nearby rationals
  Rational dx = direction.x.enclose(40).first;
  Rational dy = direction.y.enclose(40).first;
  if (dx == 0 && dy == 0) throw std::invalid_argument("zero direction");
  std::optional<Rational> reach;
  auto limit = [&](const Rational& d, std::int64_t lo, std::int64_t hi) {
    if (d == 0) return;
    Rational s = d > 0 ? Rational(hi) / d : Rational(lo) / d;
    if (s < 0) s = 0;
    reach = reach ? std::min(*reach, s) : s;
  };
  limit(dx, window.xmin, window.xmax);
  limit(dy, window.ymin, window.ymax);
  return {PlanePoint{}, PlanePoint{*reach * dx, *reach * dy}};
}

std::string palette(std::size_t i) {
  static const char* const colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                       "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  return colors[i % (sizeof colors / sizeof *colors)];
}

std::string render_svg(const SvgScene& scene) {
  const SvgWindow& w = scene.window;
  if (w.xmax <= w.xmin || w.ymax <= w.ymin) throw std::invalid_argument("empty SVG window");
  if (w.xmax - w.xmin > 400 || w.ymax - w.ymin > 400) {
    throw std::invalid_argument("SVG window wider than 400 units");
  }
  const std::int64_t plot_w = (w.xmax - w.xmin) * kScale;
  const std::int64_t plot_h = (w.ymax - w.ymin) * kScale;
  const std::int64_t width = plot_w + 2 * kMargin;
  const std::int64_t height = plot_h + 2 * kMargin + kLegendRow * static_cast<std::int64_t>(scene.paths.size());

  auto px = [&](const Rational& x) { return coord(kMargin + (x - w.xmin) * kScale); };
  auto py = [&](const Rational& y) { return coord(kMargin + (w.ymax - y) * kScale); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << ' ' << height
      << "\" width=\"" << width << "\" height=\"" << height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

  svg << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (std::int64_t x = w.xmin; x <= w.xmax; ++x) {
    svg << "<line x1=\"" << px(x) << "\" y1=\"" << py(w.ymin) << "\" x2=\"" << px(x) << "\" y2=\""
        << py(w.ymax) << "\"/>\n";
  }
  for (std::int64_t y = w.ymin; y <= w.ymax; ++y) {
    svg << "<line x1=\"" << px(w.xmin) << "\" y1=\"" << py(y) << "\" x2=\"" << px(w.xmax) << "\" y2=\""
        << py(y) << "\"/>\n";
  }
  svg << "</g>\n<g stroke=\"#888888\" stroke-width=\"1.5\">\n";
  if (w.xmin <= 0 && 0 <= w.xmax) {
    svg << "<line x1=\"" << px(0) << "\" y1=\"" << py(w.ymin) << "\" x2=\"" << px(0) << "\" y2=\""
        << py(w.ymax) << "\"/>\n";
  }
  if (w.ymin <= 0 && 0 <= w.ymax) {
    svg << "<line x1=\"" << px(w.xmin) << "\" y1=\"" << py(0) << "\" x2=\"" << px(w.xmax) << "\" y2=\""
        << py(0) << "\"/>\n";
  }
  svg << "</g>\n";

  for (const auto& path : scene.paths) {
    svg << "<polyline fill=\"none\" stroke=\"" << path.color << "\" stroke-width=\"2\"";
    if (path.dashed) svg << " stroke-dasharray=\"6 4\"";
    svg << " points=\"";
    for (std::size_t i = 0; i < path.points.size(); ++i) {
      if (i > 0) svg << ' ';
      svg << px(path.points[i].x) << ',' << py(path.points[i].y);
    }
    svg << "\"><title>" << escape(path.label) << "</title></polyline>\n";
  }

  std::int64_t row = plot_h + 2 * kMargin;
  for (const auto& path : scene.paths) {
    svg << "<text x=\"" << kMargin << "\" y=\"" << row + 12 << "\" font-family=\"monospace\" font-size=\"12\" fill=\""
        << path.color << "\">" << escape(path.label) << "</text>\n";
    row += kLegendRow;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace latbound
