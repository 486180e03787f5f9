#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pentagram/corner.hpp"
#include "pentagram/error.hpp"
#include "pentagram/projective.hpp"

namespace pentagram {

/// Scale a matrix to a canonical projective representative: coprime integer
/// entries, first nonzero entry positive (exact); max-norm 1 (float).
template <Scalar T>
Mat3<T> normalized(const Mat3<T>& m) {
  if constexpr (is_exact_v<T>) {
    mpz_class den_lcm = 1;
    for (const auto& row : m)
      for (const auto& e : row) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), e.get_den().get_mpz_t());
    mpz_class num_gcd = 0;
    std::array<std::array<mpz_class, 3>, 3> ints;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        ints[r][c] = m[r][c].get_num() * (den_lcm / m[r][c].get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), ints[r][c].get_mpz_t());
      }
    if (sgn(num_gcd) == 0) return m;
    for (int k = 0; k < 9; ++k) {
      const int s = sgn(ints[k / 3][k % 3]);
      if (s != 0) {
        if (s < 0) num_gcd = -num_gcd;
        break;
      }
    }
    Mat3<T> out;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) out[r][c] = Rational(mpz_class(ints[r][c] / num_gcd));
    return out;
  } else {
    double mx = 0.0;
    for (const auto& row : m)
      for (double e : row) mx = std::max(mx, std::abs(e));
    return mx == 0.0 ? m : scaled(m, 1.0 / mx);
  }
}

/// One period V_0..V_{n-1} of a twisted polygon together with a lift M of
/// its monodromy, so that v_{k+jn} = M^j V_k.
template <Scalar T>
class TwistedPolygon {
 public:
  TwistedPolygon(std::vector<HomPoint<T>> vertices, const Mat3<T>& monodromy)
      : monodromy_(monodromy) {
    if (vertices.size() < 4) throw Error(ErrorCode::InvalidArgument, "a twisted polygon needs n >= 4");
    if constexpr (is_exact_v<T>) {
      monodromy_ = normalized(monodromy_);
      for (auto& v : vertices) v = normalized(v);
    }
    inverse_ = inverse(monodromy_);
    vertices_ = std::move(vertices);
    const long n = static_cast<long>(vertices_.size());
    for (long i = 0; i < n; ++i) {
      for (long j = i + 1; j < n; ++j) {
        if (same_point(vertices_[i], vertices_[j])) {
          throw Error(ErrorCode::DegeneratePolygon, "repeated vertex", j);
        }
      }
    }
    for (long i = 0; i < n; ++i) {
      if (!general_position(vertex(i), vertex(i + 1), vertex(i + 2))) {
        throw Error(ErrorCode::DegeneratePolygon, "consecutive vertices are not in general position", i);
      }
    }
  }

  static TwistedPolygon closed(std::vector<HomPoint<T>> vertices) {
    return TwistedPolygon(std::move(vertices), identity3<T>());
  }

  [[nodiscard]] std::size_t size() const noexcept { return vertices_.size(); }
  [[nodiscard]] const std::vector<HomPoint<T>>& period() const noexcept { return vertices_; }
  [[nodiscard]] const Mat3<T>& monodromy() const noexcept { return monodromy_; }
  [[nodiscard]] const Mat3<T>& inverse_monodromy() const noexcept { return inverse_; }

  /// Vertex k of the bi-infinite extension.
  [[nodiscard]] HomPoint<T> vertex(long k) const {
    const long n = static_cast<long>(vertices_.size());
    long j = k >= 0 ? k / n : -((-k + n - 1) / n);
    Vec3<T> p = vertices_[static_cast<std::size_t>(k - j * n)].coords();
    const Mat3<T>& step = j >= 0 ? monodromy_ : inverse_;
    for (long s = 0; s < (j >= 0 ? j : -j); ++s) p = mat_vec(step, p);
    if constexpr (is_exact_v<T>) p = normalized(p);
    return HomPoint<T>(p);
  }

  /// Lift of vertex k with V_{k+jn} = M^j V_k exactly (no renormalization).
  [[nodiscard]] Vec3<T> lift(long k, const Mat3<T>& m, const Mat3<T>& m_inv) const {
    const long n = static_cast<long>(vertices_.size());
    long j = k >= 0 ? k / n : -((-k + n - 1) / n);
    Vec3<T> p = vertices_[static_cast<std::size_t>(k - j * n)].coords();
    const Mat3<T>& step = j >= 0 ? m : m_inv;
    for (long s = 0; s < (j >= 0 ? j : -j); ++s) p = mat_vec(step, p);
    return p;
  }

 private:
  std::vector<HomPoint<T>> vertices_;
  Mat3<T> monodromy_;
  Mat3<T> inverse_;
};

/// Vertex i of T(P) is (v_{i-1} v_{i+1}) ∩ (v_i v_{i+2}). This alignment is the
/// unique one (among shifts of the output labels) for which the corner
/// invariants transform by map_xy; the monodromy is unchanged.
template <Scalar T>
TwistedPolygon<T> pentagram_map_geometric(const TwistedPolygon<T>& p) {
  const long n = static_cast<long>(p.size());
  std::vector<HomPoint<T>> out;
  out.reserve(p.size());
  for (long i = 0; i < n; ++i) {
    try {
      const ProjLine<T> d1 = join(p.vertex(i - 1), p.vertex(i + 1));
      const ProjLine<T> d2 = join(p.vertex(i), p.vertex(i + 2));
      out.push_back(meet(d1, d2));
    } catch (const Error& e) {
      throw Error(ErrorCode::DegenerateDiagonals, e.what(), i);
    }
  }
  return TwistedPolygon<T>(std::move(out), p.monodromy());
}

/// Left and right corner cross-ratios:
///   x_i = [v_{i-2}, v_{i-1}, (v_{i-2}v_{i-1}) ∩ (v_i v_{i+1}), (v_{i-2}v_{i-1}) ∩ (v_{i+1}v_{i+2})]
///   y_i = [(v_{i-2}v_{i-1}) ∩ (v_{i+1}v_{i+2}), (v_{i-1}v_i) ∩ (v_{i+1}v_{i+2}), v_{i+1}, v_{i+2}]
template <Scalar T>
CornerCoords<T> corner_invariants(const TwistedPolygon<T>& p) {
  const long n = static_cast<long>(p.size());
  std::vector<T> x(p.size()), y(p.size());
  for (long i = 0; i < n; ++i) {
    try {
      const HomPoint<T> vm2 = p.vertex(i - 2), vm1 = p.vertex(i - 1), v0 = p.vertex(i),
                        vp1 = p.vertex(i + 1), vp2 = p.vertex(i + 2);
      const ProjLine<T> left = join(vm2, vm1);
      const ProjLine<T> right = join(vp1, vp2);
      const HomPoint<T> far = meet(left, right);
      x[i] = cross_ratio_on_line(left, vm2, vm1, meet(left, join(v0, vp1)), far);
      y[i] = cross_ratio_on_line(right, far, meet(join(vm1, v0), right), vp1, vp2);
    } catch (const Error& e) {
      throw Error(ErrorCode::DegenerateConfiguration, e.what(), i);
    }
  }
  try {
    return CornerCoords<T>(std::move(x), std::move(y));
  } catch (const Error& e) {
    throw Error(ErrorCode::DegenerateConfiguration, e.what(), e.where());
  }
}

/// Apply a projective transformation to every vertex; the monodromy is
/// conjugated so the result is again twisted.
template <Scalar T>
TwistedPolygon<T> transformed(const TwistedPolygon<T>& p, const Mat3<T>& g) {
  std::vector<HomPoint<T>> out;
  for (const auto& v : p.period()) out.emplace_back(mat_vec(g, v.coords()));
  return TwistedPolygon<T>(std::move(out), multiply(multiply(g, p.monodromy()), inverse(g)));
}

/// Regular closed n-gon on the unit circle (float only).
TwistedPolygon<double> regular_polygon(std::size_t n);

struct ConvexityOptions {
  /// Number of periods scanned by the convexity test.
  int window_periods = 3;
};

/// Positive-quadrant, diagonal-monodromy diag(a, b, 1) with 0 < a < 1 < b,
/// and global convexity of the bi-infinite polyline over the window.
template <Scalar T>
bool is_universally_convex(const TwistedPolygon<T>& p, const ConvexityOptions& opts = {}) {
  const Mat3<T>& m = p.monodromy();
  T scale = from_int<T>(0);
  for (const auto& row : m)
    for (const auto& e : row) scale = std::max(scale, magnitude(e));
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (r != c && !negligible(m[r][c], scale)) return false;
  if (negligible(m[2][2], scale)) return false;
  const T a = T(m[0][0] / m[2][2]);
  const T b = T(m[1][1] / m[2][2]);
  if (!(a > 0 && a < 1 && b > 1)) return false;

  const long n = static_cast<long>(p.size());
  const long lo = -n;
  const long hi = n * (opts.window_periods - 1);
  std::vector<std::array<T, 2>> pts;
  for (long k = lo; k < hi; ++k) {
    const Vec3<T> c = p.vertex(k).coords();
    if (negligible(c[2], norm1(c))) return false;
    const T px = T(c[0] / c[2]);
    const T py = T(c[1] / c[2]);
    if (!(px > 0 && py > 0)) return false;
    pts.push_back({px, py});
  }
  auto edge = [&](std::size_t k) {
    return std::array<T, 2>{T(pts[k + 1][0] - pts[k][0]), T(pts[k + 1][1] - pts[k][1])};
  };
  auto turn = [](const std::array<T, 2>& u, const std::array<T, 2>& v) {
    return T(u[0] * v[1] - u[1] * v[0]);
  };
  const auto first = edge(0);
  int orientation = 0;
  for (std::size_t k = 0; k + 2 < pts.size(); ++k) {
    const auto e0 = edge(k), e1 = edge(k + 1);
    const T t = turn(e0, e1);
    const T s = T((magnitude(e0[0]) + magnitude(e0[1])) * (magnitude(e1[0]) + magnitude(e1[1])));
    if (negligible(t, s)) return false;
    const int sg = sign_of(t);
    if (orientation == 0) orientation = sg;
    if (sg != orientation) return false;
    // Every later edge stays within the open half-turn from the first edge.
    const T g = turn(first, e1);
    if (negligible(g, s) || sign_of(g) != orientation) return false;
  }
  return true;
}

/// A twisted polygon that passed is_universally_convex, with its monodromy
/// eigenvalues a < 1 < b.
template <Scalar T>
struct UniversallyConvexGon {
  TwistedPolygon<T> base;
  T a;
  T b;
};

template <Scalar T>
UniversallyConvexGon<T> as_universally_convex(const TwistedPolygon<T>& p) {
  if (!is_universally_convex(p)) throw Error(ErrorCode::ConvexityLost, "polygon is not universally convex");
  const Mat3<T>& m = p.monodromy();
  return {p, T(m[0][0] / m[2][2]), T(m[1][1] / m[2][2])};
}

struct GeneratorOptions {
  /// Relative multiplicative jitter applied to each coordinate of each vertex.
  double perturbation = 0.0;
  int retries = 32;
  double seed_x = 1.0;
  double seed_y = 1.0;
};

/// Sample phi(k) = (alpha^k p_x, beta^k p_y) for k = 0..n-1 with monodromy
/// diag(alpha^n, beta^n, 1); `alpha`, `beta` are the per-vertex step ratios.
/// Exact when T is Rational (the jitter is drawn as dyadic rationals).
template <Scalar T>
UniversallyConvexGon<T> generate_universally_convex_steps(std::size_t n, const T& alpha, const T& beta,
                                                           std::uint64_t seed,
                                                           const GeneratorOptions& opts = {}) {
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "n must be at least 4");
  if (!(alpha > 0 && alpha < 1 && beta > 1)) {
    throw Error(ErrorCode::InvalidArgument, "need 0 < a < 1 < b");
  }
  if (opts.perturbation < 0) throw Error(ErrorCode::InvalidArgument, "negative perturbation");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> jitter(-(1L << 20), 1L << 20);
  const T px = from_double<T>(opts.seed_x), py = from_double<T>(opts.seed_y);
  const T amp = from_double<T>(opts.perturbation);
  const T unit = from_int<T>(1L << 20);
  Mat3<T> m{};
  for (auto& row : m)
    for (auto& e : row) e = from_int<T>(0);
  m[0][0] = power(alpha, static_cast<long>(n));
  m[1][1] = power(beta, static_cast<long>(n));
  m[2][2] = from_int<T>(1);
  const int attempts = opts.perturbation == 0.0 ? 1 : std::max(1, opts.retries);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<HomPoint<T>> verts;
    for (std::size_t k = 0; k < n; ++k) {
      T jx = from_int<T>(1), jy = from_int<T>(1);
      if (opts.perturbation != 0.0) {
        jx += amp * from_int<T>(jitter(rng)) / unit;
        jy += amp * from_int<T>(jitter(rng)) / unit;
      }
      const long e = static_cast<long>(k);
      verts.emplace_back(T(px * power(alpha, e) * jx), T(py * power(beta, e) * jy), from_int<T>(1));
    }
    try {
      TwistedPolygon<T> poly(std::move(verts), m);
      if (is_universally_convex(poly)) return as_universally_convex(poly);
    } catch (const Error&) {
      // Degenerate draw; try again.
    }
  }
  throw Error(ErrorCode::ConvexityLost, "perturbation broke convexity on every retry");
}

/// Float convenience taking the monodromy eigenvalues 0 < a < 1 < b.
UniversallyConvexGon<double> generate_universally_convex(std::size_t n, double a, double b, std::uint64_t seed,
                                                         const GeneratorOptions& opts = {});

/// Exact version; a and b must be n-th powers of rationals.
UniversallyConvexGon<Rational> generate_universally_convex_exact(std::size_t n, const Rational& a,
                                                                 const Rational& b, std::uint64_t seed,
                                                                 const GeneratorOptions& opts = {});

/// Random twisted polygon with vertices and monodromy drawn from small
/// rationals (or their float images); retries until non-degenerate.
template <Scalar T>
TwistedPolygon<T> random_twisted_polygon(std::size_t n, std::uint64_t seed, bool closed = false) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 9);
  auto draw = [&]() { return T(from_int<T>(num(rng)) / from_int<T>(den(rng))); };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<HomPoint<T>> verts;
    for (std::size_t k = 0; k < n; ++k) verts.emplace_back(draw(), draw(), from_int<T>(1));
    Mat3<T> m = identity3<T>();
    if (!closed) {
      for (auto& row : m)
        for (auto& e : row) e = draw();
    }
    try {
      TwistedPolygon<T> poly(std::move(verts), m);
      // Require every construction used downstream to be defined.
      (void)corner_invariants(poly);
      (void)corner_invariants(pentagram_map_geometric(poly));
      return poly;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::DegeneratePolygon, "could not draw a generic polygon");
}

}  // namespace pentagram
