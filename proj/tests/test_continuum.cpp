#include <cmath>
#include <numbers>

#include "doctest.h"
#include "pentagram/continuum.hpp"
#include "pentagram/error.hpp"

using namespace pentagram;

namespace {

double max_radial_deviation(const SampledCurve& c, double r) {
  double dev = 0.0;
  for (const auto& p : c.samples()) dev = std::max(dev, std::abs(std::hypot(p[0], p[1]) - r));
  return dev;
}

}  // namespace

TEST_CASE("circle envelope is the concentric circle of radius cos eps") {
  const auto c = circle_curve(2048);
  CHECK(c.non_degenerate());
  const auto e = envelope_map(c, 0.1);
  CHECK(e.size() == c.size());
  CHECK(max_radial_deviation(e, std::cos(0.1)) < 1e-4);
  const auto big = circle_curve(2048, 3.0);
  CHECK(max_radial_deviation(envelope_map(big, 0.1), 3.0 * std::cos(0.1)) < 3e-4);
}

TEST_CASE("circle expansion exponent") {
  const auto rep = expansion_order_check(circle_curve(2048), {0.2, 0.1, 0.05, 0.025});
  CHECK(rep.points.size() == 4);
  CHECK(rep.exponent == doctest::Approx(2.0).epsilon(0.01));
  CHECK_FALSE(rep.warning);
  for (const auto& p : rep.points) CHECK(p.displacement == doctest::Approx(1 - std::cos(p.eps)).epsilon(1e-3));
}

TEST_CASE("oval and ellipse exponents") {
  const auto oval = expansion_order_check(oval_curve(2048), {0.2, 0.1, 0.05, 0.025});
  CHECK(std::abs(oval.exponent - 2.0) < 0.1);
  const auto ell = expansion_order_check(ellipse_curve(2048, 1.5, 1.0), {0.2, 0.1, 0.05, 0.025});
  CHECK(std::abs(ell.exponent - 2.0) < 0.1);
}

TEST_CASE("ellipse envelope lies inside the ellipse") {
  const double a = 1.5, b = 1.0;
  const auto e = envelope_map(ellipse_curve(2048, a, b), 0.1);
  for (const auto& p : e.samples()) CHECK((p[0] * p[0]) / (a * a) + (p[1] * p[1]) / (b * b) < 1.0);
}

TEST_CASE("envelope commutes with affine maps") {
  AffineMap g;
  g.a = {{{1.3, 0.4}, {-0.2, 0.9}}};
  g.b = {0.7, -1.1};
  const auto c = oval_curve(1024);
  const auto lhs = envelope_map(transformed(c, g), 0.1);
  const auto rhs = transformed(envelope_map(c, 0.1), g);
  double err = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    err = std::max(err, std::hypot(lhs.samples()[i][0] - rhs.samples()[i][0], lhs.samples()[i][1] - rhs.samples()[i][1]));
  }
  CHECK(err < 1e-10);
  const auto inv = g.inverse();
  const auto back = inv(g({0.3, -0.2}));
  CHECK(back[0] == doctest::Approx(0.3));
  CHECK(back[1] == doctest::Approx(-0.2));
}

TEST_CASE("coarse sampling raises a warning") {
  const auto rep = expansion_order_check(circle_curve(32), {0.2, 0.1, 0.05, 0.025});
  CHECK(rep.warning);
  CHECK_FALSE(rep.warning_reason.empty());
}

TEST_CASE("degenerate input") {
  const auto line = line_curve(256);
  CHECK_FALSE(line.non_degenerate());
  try {
    (void)envelope_map(line, 0.1);
    FAIL("expected DegenerateChords");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateChords);
  }
}

TEST_CASE("interpolation and distance") {
  const auto c = circle_curve(512);
  const double t = 0.123;
  const auto p = c.at(t);
  CHECK(p[0] == doctest::Approx(std::cos(t)).epsilon(1e-8));
  CHECK(p[1] == doctest::Approx(std::sin(t)).epsilon(1e-8));
  const auto d = c.tangent(t);
  CHECK(d[0] == doctest::Approx(-std::sin(t)).epsilon(1e-5));
  CHECK(curve_distance(c, circle_curve(512, 0.9)) == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(c.sample(-1)[1] == doctest::Approx(std::sin(-2 * std::numbers::pi / 512)));
}
