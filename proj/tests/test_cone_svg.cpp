#include "latbound/cone.hpp"
#include "latbound/rays.hpp"
#include "latbound/svg.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace latbound;

TEST(Cone, SqrtEnclosureIsTightAndCorrect) {
  for (unsigned bits : {8u, 40u, 64u, 200u}) {
    for (int n : {0, 1, 2, 26, 99, 100, 12345}) {
      auto e = sqrt_enclosure(n, bits);
      EXPECT_LE(e.lo * e.lo, n);
      EXPECT_GE(e.hi * e.hi, n);
      EXPECT_LE(e.hi - e.lo, Rational(BigInt(1), BigInt(1) << bits));
    }
  }
  EXPECT_THROW(sqrt_enclosure(-1, 16), std::domain_error);
}

TEST(Cone, PiEnclosure) {
  // 314159265358979323846264338327950288 / 10^35 is within 10^-35 of pi
  BigInt digits("314159265358979323846264338327950288");
  BigInt scale = boost::multiprecision::pow(BigInt(10), 35);
  Rational lo(digits - 1, scale), hi(digits + 1, scale);
  for (unsigned bits : {8u, 32u, 64u, 100u}) {
    auto e = pi_enclosure(bits);
    EXPECT_LE(e.lo, hi);
    EXPECT_GE(e.hi, lo);
    EXPECT_LE(e.hi - e.lo, Rational(BigInt(4), BigInt(1) << bits));
  }
  auto fine = pi_enclosure(200);
  EXPECT_LE(fine.lo, hi);
  EXPECT_GE(fine.hi, lo);
  EXPECT_GT(fine.lo, lo - Rational(1, 1000));
}

TEST(Cone, LengthsAndRatio) {
  for (const char* eps : {"1", "1/1000", "7/3"}) {
    Rational e = parse_rational(eps);
    auto c = cone_lengths(e);
    EXPECT_FALSE(c.extendable);
    EXPECT_LT(c.around.hi, c.through.lo);
    // through/(2 eps) squared brackets 26; around/eps brackets pi
    EXPECT_LE((c.through.lo / (2 * e)) * (c.through.lo / (2 * e)), 26);
    EXPECT_GE((c.through.hi / (2 * e)) * (c.through.hi / (2 * e)), 26);
    Rational ratio_lo = c.through.lo / c.around.hi, ratio_hi = c.through.hi / c.around.lo;
    EXPECT_GT(ratio_lo, Rational(3246136, 1000000));
    EXPECT_LT(ratio_hi, Rational(3246137, 1000000));
  }
  EXPECT_THROW(cone_lengths(0), std::invalid_argument);
}

TEST(Cone, LowPrecisionStillSeparates) {
  auto c = cone_lengths(1, 8);
  EXPECT_GE(c.bits, 8u);
  EXPECT_FALSE(c.extendable);
}

TEST(Cone, PrecisionFromEnvironment) {
  ::setenv("LATTICE_HORIZON_PRECISION", "128", 1);
  EXPECT_EQ(horizon_precision(), 128u);
  ::setenv("LATTICE_HORIZON_PRECISION", "3", 1);
  EXPECT_THROW(horizon_precision(), std::invalid_argument);
  ::unsetenv("LATTICE_HORIZON_PRECISION");
  EXPECT_EQ(horizon_precision(), 64u);
}

TEST(Svg, DeterministicDocument) {
  SvgScene scene;
  scene.paths.push_back({"f = (01)", palette(0), ray_points(*canonicalize(parse_ray("(01)")), 12), false});
  scene.paths.push_back({"line <2 & 1>", palette(1),
                         reference_line({Surd(2), Surd(1)}, scene.window), true});
  std::string a = render_svg(scene);
  std::string b = render_svg(scene);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("<?xml", 0), 0u);
  EXPECT_NE(a.find("<svg "), std::string::npos);
  EXPECT_NE(a.find("</svg>"), std::string::npos);
  EXPECT_NE(a.find("f = (01)"), std::string::npos);
  EXPECT_NE(a.find("&lt;2 &amp; 1&gt;"), std::string::npos);
  EXPECT_NE(a.find("stroke-dasharray"), std::string::npos);
}

TEST(Svg, RayPointsFollowTheRay) {
  RayCode ray = *canonicalize(parse_ray("1(001)"));
  auto pts = ray_points(ray, 20);
  ASSERT_EQ(pts.size(), 21u);
  for (std::uint64_t t = 0; t <= 20; ++t) {
    auto p = point_at(ray, t);
    EXPECT_EQ(pts[t], (PlanePoint{Rational(p.x), Rational(p.y)}));
  }
}

TEST(Svg, WindowChecks) {
  SvgScene scene;
  scene.window = {0, 0, 0, 5};
  EXPECT_THROW(render_svg(scene), std::invalid_argument);
  scene.window = {0, 0, 1000, 5};
  EXPECT_THROW(render_svg(scene), std::invalid_argument);
}

TEST(Svg, ReferenceLineStaysInWindow) {
  SvgWindow w;
  auto pts = reference_line({Surd(1), Surd(0, 1, 2)}, w);
  ASSERT_EQ(pts.size(), 2u);
  for (const auto& p : pts) {
    EXPECT_GE(p.x, w.xmin - Rational(1, 1000));
    EXPECT_LE(p.y, w.ymax + Rational(1, 1000));
  }
}
