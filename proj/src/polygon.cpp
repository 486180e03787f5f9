#include "pentagram/polygon.hpp"

#include <cmath>
#include <numbers>

namespace pentagram {

TwistedPolygon<double> regular_polygon(std::size_t n) {
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "n must be at least 4");
  std::vector<HomPoint<double>> verts;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    verts.emplace_back(std::cos(t), std::sin(t), 1.0);
  }
  return TwistedPolygon<double>::closed(std::move(verts));
}

UniversallyConvexGon<double> generate_universally_convex(std::size_t n, double a, double b, std::uint64_t seed,
                                                         const GeneratorOptions& opts) {
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "n must be at least 4");
  if (!(a > 0 && a < 1 && b > 1)) throw Error(ErrorCode::InvalidArgument, "need 0 < a < 1 < b");
  const double dn = static_cast<double>(n);
  return generate_universally_convex_steps<double>(n, std::pow(a, 1.0 / dn), std::pow(b, 1.0 / dn), seed, opts);
}

UniversallyConvexGon<Rational> generate_universally_convex_exact(std::size_t n, const Rational& a,
                                                                 const Rational& b, std::uint64_t seed,
                                                                 const GeneratorOptions& opts) {
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "n must be at least 4");
  if (!(a > 0 && a < 1 && b > 1)) throw Error(ErrorCode::InvalidArgument, "need 0 < a < 1 < b");
  const auto alpha = real_root(a, static_cast<unsigned>(n));
  const auto beta = real_root(b, static_cast<unsigned>(n));
  if (!alpha || !beta) throw Error(ErrorCode::NonRationalRoot, "a and b must be n-th powers of rationals");
  return generate_universally_convex_steps<Rational>(n, *alpha, *beta, seed, opts);
}

}  // namespace pentagram
