#pragma once

// Shared fixtures for the unit tests and the acceptance binary.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "pentagram/difference_eq.hpp"
#include "pentagram/polygon.hpp"

namespace pentagram::testing {

/// Rational point on the unit circle from the stereographic parameter t.
inline HomPoint<Rational> circle_point(const Rational& t) {
  const Rational d = 1 + t * t;
  return HomPoint<Rational>(Rational((1 - t * t) / d), Rational(2 * t / d), Rational(1));
}

/// Closed convex n-gon with vertices at distinct rational points of the unit
/// circle, in increasing parameter order.
inline TwistedPolygon<Rational> random_convex_polygon(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-60, 60);
  std::uniform_int_distribution<long> den(1, 13);
  for (;;) {
    std::vector<Rational> ts;
    while (ts.size() < n) {
      Rational t(num(rng), den(rng));
      t.canonicalize();
      if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());
    std::vector<HomPoint<Rational>> verts;
    for (const auto& t : ts) verts.push_back(circle_point(t));
    try {
      return TwistedPolygon<Rational>::closed(std::move(verts));
    } catch (const Error&) {
    }
  }
}

/// Random rational corner coordinates of a generic twisted polygon.
inline CornerCoords<Rational> random_coords(std::size_t n, std::uint64_t seed) {
  for (std::uint64_t s = seed;; s += 7919) {
    try {
      const auto z = corner_invariants(random_twisted_polygon<Rational>(n, s));
      (void)map_xy(z);
      return z;
    } catch (const Error&) {
    }
  }
}

inline CornerCoords<double> to_float(const CornerCoords<Rational>& z) {
  std::vector<double> x, y;
  for (const auto& v : z.x()) x.push_back(v.get_d());
  for (const auto& v : z.y()) y.push_back(v.get_d());
  return CornerCoords<double>(std::move(x), std::move(y));
}

inline Mat3<Rational> random_matrix(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-9, 9);
  for (;;) {
    Mat3<Rational> g;
    for (auto& row : g)
      for (auto& e : row) e = Rational(num(rng));
    if (determinant(g) != 0) return g;
  }
}

}  // namespace pentagram::testing
