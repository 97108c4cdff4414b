#include "latbound/plane_point.hpp"

#include <stdexcept>

namespace latbound {

PlanePoint parse_plane_point(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
    throw std::invalid_argument("expected a point \"x,y\", got '" + std::string(text) + "'");
  }
  return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

std::string to_string(const PlanePoint& p) { return to_string(p.x) + "," + to_string(p.y); }

}  // namespace latbound
