#pragma once

#include "latbound/number.hpp"

#include <string>
#include <string_view>

namespace latbound {

/// A point of the plane with exact rational coordinates.
struct PlanePoint {
  Rational x{0};
  Rational y{0};

  friend PlanePoint operator+(const PlanePoint& p, const PlanePoint& q) { return {p.x + q.x, p.y + q.y}; }
  friend PlanePoint operator-(const PlanePoint& p, const PlanePoint& q) { return {p.x - q.x, p.y - q.y}; }
  friend PlanePoint operator*(const Rational& s, const PlanePoint& p) { return {s * p.x, s * p.y}; }
  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
  friend bool operator<(const PlanePoint& p, const PlanePoint& q) {
    return p.x != q.x ? p.x < q.x : p.y < q.y;
  }
};

/// "x,y" with rational coordinates, e.g. "3/2,-1/2".
PlanePoint parse_plane_point(std::string_view text);
std::string to_string(const PlanePoint& p);

inline Rational squared_euclidean(const PlanePoint& p, const PlanePoint& q) {
  Rational dx = p.x - q.x;
  Rational dy = p.y - q.y;
  return dx * dx + dy * dy;
}

}  // namespace latbound
