#include "pentagram/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pentagram/error.hpp"
#include "pentagram/scalar.hpp"

namespace pentagram {

namespace {

double cross2(const Point2& u, const Point2& v) { return u[0] * v[1] - u[1] * v[0]; }
double norm2(const Point2& u) { return std::hypot(u[0], u[1]); }
Point2 sub(const Point2& p, const Point2& q) { return {p[0] - q[0], p[1] - q[1]}; }

}  // namespace

AffineMap AffineMap::inverse() const {
  const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  if (det == 0.0) throw Error(ErrorCode::SingularMatrix, "affine map is not invertible");
  AffineMap inv;
  inv.a = {{{a[1][1] / det, -a[0][1] / det}, {-a[1][0] / det, a[0][0] / det}}};
  inv.b = {-(inv.a[0][0] * b[0] + inv.a[0][1] * b[1]), -(inv.a[1][0] * b[0] + inv.a[1][1] * b[1])};
  return inv;
}

SampledCurve::SampledCurve(std::vector<Point2> samples, double period, std::optional<AffineMap> monodromy)
    : samples_(std::move(samples)), period_(period), monodromy_(monodromy) {
  if (samples_.size() < 8) throw Error(ErrorCode::InvalidArgument, "need at least 8 samples");
  if (!(period_ > 0.0) || !std::isfinite(period_)) throw Error(ErrorCode::InvalidArgument, "period must be positive");
  if (monodromy_) inverse_ = monodromy_->inverse();
}

Point2 SampledCurve::sample(long k) const {
  const long n = static_cast<long>(samples_.size());
  const long j = k >= 0 ? k / n : -((-k + n - 1) / n);
  Point2 p = samples_[static_cast<std::size_t>(k - j * n)];
  if (monodromy_) {
    for (long s = 0; s < std::abs(j); ++s) p = j > 0 ? (*monodromy_)(p) : (*inverse_)(p);
  }
  return p;
}

Point2 SampledCurve::at(double t) const {
  const double u = t / spacing();
  const double fl = std::floor(u);
  const long i = static_cast<long>(fl);
  const double s = u - fl;
  const std::array<double, 4> w{-s * (s - 1) * (s - 2) / 6, (s + 1) * (s - 1) * (s - 2) / 2,
                                -(s + 1) * s * (s - 2) / 2, (s + 1) * s * (s - 1) / 6};
  Point2 out{0.0, 0.0};
  for (int k = 0; k < 4; ++k) {
    const Point2 p = sample(i - 1 + k);
    out[0] += w[k] * p[0];
    out[1] += w[k] * p[1];
  }
  return out;
}

Point2 SampledCurve::tangent(double t) const {
  const double h = spacing();
  const double u = t / h;
  const double fl = std::floor(u);
  const long i = static_cast<long>(fl);
  const double s = u - fl;
  const std::array<double, 4> w{-(3 * s * s - 6 * s + 2) / 6, (3 * s * s - 4 * s - 1) / 2,
                                -(3 * s * s - 2 * s - 2) / 2, (3 * s * s - 1) / 6};
  Point2 out{0.0, 0.0};
  for (int k = 0; k < 4; ++k) {
    const Point2 p = sample(i - 1 + k);
    out[0] += w[k] * p[0] / h;
    out[1] += w[k] * p[1] / h;
  }
  return out;
}

bool SampledCurve::non_degenerate() const {
  const long n = static_cast<long>(samples_.size());
  for (long k = 0; k < n; ++k) {
    const Point2 pm = sample(k - 1), p0 = sample(k), pp = sample(k + 1);
    const Point2 d1 = sub(pp, p0);
    const Point2 d2{pp[0] - 2 * p0[0] + pm[0], pp[1] - 2 * p0[1] + pm[1]};
    const double scale = norm2(d1) * norm2(d2);
    if (scale == 0.0 || std::abs(cross2(d1, d2)) <= 1e-9 * scale) return false;
  }
  return true;
}

SampledCurve circle_curve(std::size_t n, double radius) {
  return ellipse_curve(n, radius, radius);
}

SampledCurve ellipse_curve(std::size_t n, double a, double b) {
  std::vector<Point2> pts;
  const double period = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = period * static_cast<double>(i) / static_cast<double>(n);
    pts.push_back({a * std::cos(t), b * std::sin(t)});
  }
  return SampledCurve(std::move(pts), period);
}

SampledCurve oval_curve(std::size_t n, double amplitude) {
  std::vector<Point2> pts;
  const double period = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = period * static_cast<double>(i) / static_cast<double>(n);
    const double r = 1.0 + amplitude * std::cos(3.0 * t);
    pts.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return SampledCurve(std::move(pts), period);
}

SampledCurve line_curve(std::size_t n) {
  std::vector<Point2> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({static_cast<double>(i) / static_cast<double>(n), 0.0});
  AffineMap shift;
  shift.b = {1.0, 0.0};
  return SampledCurve(std::move(pts), 1.0, shift);
}

SampledCurve transformed(const SampledCurve& c, const AffineMap& g) {
  std::vector<Point2> pts;
  for (const auto& p : c.samples()) pts.push_back(g(p));
  std::optional<AffineMap> m;
  if (c.monodromy()) {
    // g M g^{-1}
    const AffineMap gi = g.inverse();
    const AffineMap& mm = *c.monodromy();
    AffineMap out;
    for (int r = 0; r < 2; ++r)
      for (int col = 0; col < 2; ++col) {
        double acc = 0.0;
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) acc += g.a[r][k] * mm.a[k][l] * gi.a[l][col];
        out.a[r][col] = acc;
      }
    const Point2 origin_image = g(mm(gi(Point2{0.0, 0.0})));
    out.b = origin_image;
    m = out;
  }
  return SampledCurve(std::move(pts), c.period(), m);
}

SampledCurve envelope_map(const SampledCurve& c, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  if (!c.non_degenerate()) throw Error(ErrorCode::DegenerateChords, "input curve is degenerate");
  const double h = c.spacing();
  const long n = static_cast<long>(c.size());
  std::vector<Point2> out;
  out.reserve(c.size());
  for (long i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * h;
    const Point2 p1 = c.at(t - eps), q1 = c.at(t + eps);
    const Point2 p2 = c.at(t + h - eps), q2 = c.at(t + h + eps);
    const Point2 d1 = sub(q1, p1), d2 = sub(q2, p2);
    const double denom = cross2(d1, d2);
    if (std::abs(denom) <= tolerance() * norm2(d1) * norm2(d2)) {
      throw Error(ErrorCode::DegenerateChords, "adjacent chords are parallel", i);
    }
    const double s = cross2(sub(p2, p1), d2) / denom;
    out.push_back({p1[0] + s * d1[0], p1[1] + s * d1[1]});
  }
  return SampledCurve(std::move(out), c.period(), c.monodromy());
}

double curve_distance(const SampledCurve& c, const SampledCurve& other) {
  const long n = static_cast<long>(c.size());
  const long lo = c.monodromy() ? -n / 2 : 0;
  const long hi = c.monodromy() ? n + n / 2 : n;
  const double h = c.spacing();
  double worst = 0.0;
  for (const auto& q : other.samples()) {
    long best_k = lo;
    double best = std::numeric_limits<double>::infinity();
    for (long k = lo; k < hi; ++k) {
      const double d = norm2(sub(c.sample(k), q));
      if (d < best) {
        best = d;
        best_k = k;
      }
    }
    double t = static_cast<double>(best_k) * h;
    for (int it = 0; it < 30; ++it) {
      const Point2 g = c.at(t), dg = c.tangent(t);
      const double step = (sub(g, q)[0] * dg[0] + sub(g, q)[1] * dg[1]) / (dg[0] * dg[0] + dg[1] * dg[1]);
      t -= std::clamp(step, -h, h);
      if (std::abs(step) < 1e-15 * h) break;
    }
    worst = std::max(worst, std::min(best, norm2(sub(c.at(t), q))));
  }
  return worst;
}

ExpansionReport expansion_order_check(const SampledCurve& c, const std::vector<double>& ladder) {
  if (ladder.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two eps values");
  ExpansionReport rep{};
  for (double eps : ladder) rep.points.push_back({eps, curve_distance(c, envelope_map(c, eps))});
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(rep.points.size());
  for (const auto& p : rep.points) {
    const double lx = std::log(p.eps), ly = std::log(p.displacement);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  rep.exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double icpt = (sy - rep.exponent * sx) / m;
  for (const auto& p : rep.points) {
    rep.fit_residual = std::max(rep.fit_residual,
                                std::abs(std::log(p.displacement) - (icpt + rep.exponent * std::log(p.eps))));
  }
  const double smallest = *std::min_element(ladder.begin(), ladder.end());
  if (smallest < 2.0 * c.spacing()) {
    rep.warning = true;
    rep.warning_reason = "smallest eps is below twice the sample spacing";
  } else if (rep.fit_residual > 0.05) {
    rep.warning = true;
    rep.warning_reason = "poor power-law fit";
  }
  return rep;
}

}  // namespace pentagram
