#pragma once

// Discrete chord-envelope map on sampled plane curves. Sample i of the
// output is the meet of the chord (γ(t_i - ε), γ(t_i + ε)) with the chord one
// sample spacing later; off-grid points come from 4-point cubic Lagrange
// interpolation of the samples.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pentagram {

using Point2 = std::array<double, 2>;

/// p -> A p + b.
struct AffineMap {
  std::array<std::array<double, 2>, 2> a{{{1.0, 0.0}, {0.0, 1.0}}};
  Point2 b{0.0, 0.0};

  [[nodiscard]] Point2 operator()(const Point2& p) const {
    return {a[0][0] * p[0] + a[0][1] * p[1] + b[0], a[1][0] * p[0] + a[1][1] * p[1] + b[1]};
  }
  [[nodiscard]] AffineMap inverse() const;
};

class SampledCurve {
 public:
  /// Samples at t_i = i * period / N, i = 0..N-1. Without a monodromy the
  /// curve is closed; with one, γ(t + period) = monodromy(γ(t)).
  SampledCurve(std::vector<Point2> samples, double period, std::optional<AffineMap> monodromy = std::nullopt);

  [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
  [[nodiscard]] double period() const noexcept { return period_; }
  [[nodiscard]] double spacing() const noexcept { return period_ / static_cast<double>(samples_.size()); }
  [[nodiscard]] const std::vector<Point2>& samples() const noexcept { return samples_; }
  [[nodiscard]] const std::optional<AffineMap>& monodromy() const noexcept { return monodromy_; }

  /// Sample k of the bi-infinite extension.
  [[nodiscard]] Point2 sample(long k) const;
  /// Interpolated point at parameter t.
  [[nodiscard]] Point2 at(double t) const;
  /// Derivative of the interpolant at t.
  [[nodiscard]] Point2 tangent(double t) const;

  /// Discrete first and second differences independent at every sample.
  [[nodiscard]] bool non_degenerate() const;

 private:
  std::vector<Point2> samples_;
  double period_;
  std::optional<AffineMap> monodromy_;
  std::optional<AffineMap> inverse_;
};

SampledCurve circle_curve(std::size_t n, double radius = 1.0);
SampledCurve ellipse_curve(std::size_t n, double a, double b);
/// Convex oval r(θ) = 1 + amplitude cos 3θ (convex for amplitude < 0.1).
SampledCurve oval_curve(std::size_t n, double amplitude = 0.08);
/// Points on the x-axis with a translation monodromy.
SampledCurve line_curve(std::size_t n);
SampledCurve transformed(const SampledCurve& c, const AffineMap& g);

/// Throws DegenerateChords when adjacent chords are parallel within tolerance
/// or the input is degenerate.
SampledCurve envelope_map(const SampledCurve& c, double eps);

/// sup over samples of `other` of the distance to the curve `c`.
double curve_distance(const SampledCurve& c, const SampledCurve& other);

struct ExpansionPoint {
  double eps;
  double displacement;
};

struct ExpansionReport {
  std::vector<ExpansionPoint> points;
  double exponent;         // least-squares slope of log displacement vs log ε
  double fit_residual;     // max |log residual| of the fit
  bool warning;            // coarse sampling or poor fit
  std::string warning_reason;
};

ExpansionReport expansion_order_check(const SampledCurve& c, const std::vector<double>& ladder);

}  // namespace pentagram
