#pragma once

// Global (a,b) coordinates for twisted n-gons with 3 ∤ n: lifts V_i of the
// vertices with det(V_i, V_{i+1}, V_{i+2}) = 1 satisfy
//   V_{i+3} = a_i V_{i+2} + b_i V_{i+1} + V_i,
// with n-periodic coefficients.
//
// Indexing (0-based, cyclic mod n):
//   x_i = a_{i-2} / (b_{i-2} b_{i-1}),   y_i = -b_{i-1} / (a_{i-2} a_{i-1})
//   with f_j = 1 + a_j b_{j-1} and m = floor(n/3),
//   T*a_i = a_{i+2} prod_{k=1..m} f_{i+3k+2} / f_{i-3k+2}
//   T*b_i = b_{i-1} prod_{k=1..m} f_{i-3k}   / f_{i+3k}

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "pentagram/corner.hpp"
#include "pentagram/error.hpp"
#include "pentagram/linalg.hpp"
#include "pentagram/polygon.hpp"
#include "pentagram/projective.hpp"

namespace pentagram {

inline void require_not_divisible_by_three(std::size_t n) {
  if (n % 3 == 0) throw Error(ErrorCode::DivisibleByThree, "n = " + std::to_string(n) + " is divisible by 3");
}

template <Scalar T>
class ABCoords {
 public:
  ABCoords(std::vector<T> a, std::vector<T> b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.size() != b_.size()) throw Error(ErrorCode::DimensionMismatch, "a and b must have the same length");
    if (a_.size() < 4) throw Error(ErrorCode::InvalidArgument, "need n >= 4");
    require_not_divisible_by_three(a_.size());
  }

  static ABCoords constant(std::size_t n, const T& a, const T& b) {
    return ABCoords(std::vector<T>(n, a), std::vector<T>(n, b));
  }

  [[nodiscard]] std::size_t size() const noexcept { return a_.size(); }
  [[nodiscard]] const std::vector<T>& a() const noexcept { return a_; }
  [[nodiscard]] const std::vector<T>& b() const noexcept { return b_; }
  [[nodiscard]] const T& a(long i) const { return a_[wrap(i, a_.size())]; }
  [[nodiscard]] const T& b(long i) const { return b_[wrap(i, b_.size())]; }

  friend bool operator==(const ABCoords& l, const ABCoords& r) { return l.a_ == r.a_ && l.b_ == r.b_; }

 private:
  std::vector<T> a_;
  std::vector<T> b_;
};

/// Random nonzero coefficients drawn from small rationals (or their float
/// images), with every 1 + a_j b_{j-1} nonzero.
template <Scalar T>
ABCoords<T> random_ab(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-12, 12);
  std::uniform_int_distribution<long> den(1, 7);
  auto draw = [&]() {
    long p = 0;
    while (p == 0) p = num(rng);
    return T(from_int<T>(p) / from_int<T>(den(rng)));
  };
  for (;;) {
    std::vector<T> a(n), b(n);
    for (auto& v : a) v = draw();
    for (auto& v : b) v = draw();
    bool ok = true;
    for (std::size_t j = 0; j < n; ++j) ok = ok && !is_zero(T(from_int<T>(1) + a[j] * b[(j + n - 1) % n]));
    if (ok) return ABCoords<T>(std::move(a), std::move(b));
  }
}

/// V_0 .. V_{n+2} generated from the standard basis.
template <Scalar T>
std::vector<Vec3<T>> propagate_lifts(const ABCoords<T>& c) {
  const std::size_t n = c.size();
  std::vector<Vec3<T>> v(n + 3);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) v[i][k] = from_int<T>(i == k ? 1 : 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 3; ++k) {
      v[i + 3][k] = T(c.a()[i] * v[i + 2][k] + c.b()[i] * v[i + 1][k] + v[i][k]);
    }
  }
  return v;
}

/// M with (V_n, V_{n+1}, V_{n+2}) = M (V_0, V_1, V_2); det M = 1.
template <Scalar T>
Mat3<T> monodromy_matrix(const ABCoords<T>& c) {
  const auto v = propagate_lifts(c);
  const std::size_t n = c.size();
  Mat3<T> m;
  for (int col = 0; col < 3; ++col)
    for (int r = 0; r < 3; ++r) m[r][col] = v[n + col][r];
  return m;
}

template <Scalar T>
TwistedPolygon<T> ab_to_polygon(const ABCoords<T>& c) {
  const auto v = propagate_lifts(c);
  std::vector<HomPoint<T>> verts;
  verts.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) verts.emplace_back(v[i]);
  return TwistedPolygon<T>(std::move(verts), monodromy_matrix(c));
}

/// Lifts with every consecutive determinant equal to `det`; det is 1 unless
/// exact arithmetic cannot reach it, in which case it is the common value.
template <Scalar T>
struct NormalizedLift {
  std::vector<Vec3<T>> lifts;  // V_0 .. V_{n+2}
  T det;
  ABCoords<T> coeffs;
};

template <Scalar T>
NormalizedLift<T> normalized_lift(const TwistedPolygon<T>& p) {
  const std::size_t n = p.size();
  require_not_divisible_by_three(n);
  const long ln = static_cast<long>(n);

  // Unimodular lift of the monodromy.
  const Mat3<T>& m = p.monodromy();
  const auto root = real_root(determinant(m), 3);
  if (!root) throw Error(ErrorCode::NonRationalRoot, "det of the monodromy is not a rational cube");
  const Mat3<T> mh = scaled(m, T(from_int<T>(1) / *root));
  const Mat3<T> mh_inv = inverse(mh);

  std::vector<Vec3<T>> u(n + 3);
  for (long k = 0; k < ln + 3; ++k) u[k] = p.lift(k, mh, mh_inv);

  std::vector<T> d(n + 1);
  for (long i = 0; i <= ln; ++i) {
    d[i] = det3(u[i], u[i + 1], u[i + 2]);
    if (negligible(d[i], T(norm1(u[i]) * norm1(u[i + 1]) * norm1(u[i + 2])))) {
      throw Error(ErrorCode::DegeneratePolygon, "consecutive lifts are dependent", i);
    }
  }
  // With λ_i the lift scales, r_i = λ_{i+3}/λ_i = D_i / D_{i+1} and, since
  // 3k = 1 mod n, ρ_i = λ_{i+1}/λ_i = prod_{t<k} r_{i+3t}.
  auto r = [&](long i) { return T(d[wrap(i, n)] / d[wrap(i + 1, n)]); };
  long k3 = 1;
  while ((3 * k3) % ln != 1) ++k3;
  std::vector<T> rho(n);
  for (long i = 0; i < ln; ++i) {
    T prod = from_int<T>(1);
    for (long t = 0; t < k3; ++t) prod *= r(i + 3 * t);
    rho[i] = prod;
  }
  auto Rho = [&](long i) -> const T& { return rho[wrap(i, n)]; };

  std::vector<T> a(n), b(n);
  for (long i = 0; i < ln; ++i) {
    const T base = det3(u[i + 2], u[i + 1], u[i]);
    const T alpha = T(det3(u[i + 3], u[i + 1], u[i]) / base);
    const T beta = T(det3(u[i + 2], u[i + 3], u[i]) / base);
    a[i] = T(alpha * r(i) / (Rho(i) * Rho(i + 1)));
    b[i] = T(beta * Rho(i + 1) * Rho(i + 2));
  }

  std::vector<Vec3<T>> lifts(n + 3);
  T lambda = from_int<T>(1);
  for (long i = 0; i < ln + 3; ++i) {
    for (int c = 0; c < 3; ++c) lifts[i][c] = T(lambda * u[i][c]);
    lambda *= Rho(i);
  }
  T common = det3(lifts[0], lifts[1], lifts[2]);
  if (const auto s = real_root(common, 3)) {
    const T inv = T(from_int<T>(1) / *s);
    for (auto& v : lifts)
      for (auto& e : v) e *= inv;
    common = from_int<T>(1);
  }
  return {std::move(lifts), common, ABCoords<T>(std::move(a), std::move(b))};
}

template <Scalar T>
ABCoords<T> lift_polygon(const TwistedPolygon<T>& p) {
  return normalized_lift(p).coeffs;
}

template <Scalar T>
CornerCoords<T> ab_to_xy(const ABCoords<T>& c) {
  const long n = static_cast<long>(c.size());
  for (long i = 0; i < n; ++i) {
    if (is_zero(c.a(i))) throw Error(ErrorCode::ZeroCoefficient, "a is zero", i);
    if (is_zero(c.b(i))) throw Error(ErrorCode::ZeroCoefficient, "b is zero", i);
  }
  std::vector<T> x(c.size()), y(c.size());
  for (long i = 0; i < n; ++i) {
    x[i] = T(c.a(i - 2) / (c.b(i - 2) * c.b(i - 1)));
    y[i] = T(-c.b(i - 1) / (c.a(i - 2) * c.a(i - 1)));
  }
  return CornerCoords<T>(std::move(x), std::move(y));
}

/// Integer exponent matrix of ab_to_xy on magnitudes: rows (x_0.., y_0..),
/// columns (a_0.., b_0..).
Matrix<Rational> ab_exponent_matrix(std::size_t n);

/// q and E = q A^{-1} with E integral, q the least such positive integer.
struct ExponentInverse {
  long q;
  std::vector<std::vector<long>> e;
};

ExponentInverse ab_exponent_inverse(std::size_t n);

template <Scalar T>
ABCoords<T> xy_to_ab(const CornerCoords<T>& z) {
  const std::size_t n = z.size();
  require_not_divisible_by_three(n);
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "need n >= 4");
  const ExponentInverse inv = ab_exponent_inverse(n);
  const std::vector<T> flat = z.flat();
  // Sign bits of each equation: x_i ~ a b b, y_i ~ -b a a.
  std::vector<int> sigma(2 * n);
  for (std::size_t l = 0; l < 2 * n; ++l) {
    const bool negative = sign_of(flat[l]) < 0;
    sigma[l] = (l < n ? negative : !negative) ? 1 : 0;
  }
  std::vector<T> u(2 * n);
  for (std::size_t j = 0; j < 2 * n; ++j) {
    long parity = 0;
    for (std::size_t l = 0; l < 2 * n; ++l) parity += inv.e[j][l] * sigma[l];
    const bool negative = (parity % 2 + 2) % 2 == 1;
    T mag;
    if constexpr (is_exact_v<T>) {
      Rational prod = 1;
      for (std::size_t l = 0; l < 2 * n; ++l) prod *= power(magnitude(flat[l]), inv.e[j][l]);
      const auto root = real_root(prod, static_cast<unsigned>(inv.q));
      if (!root) throw Error(ErrorCode::NonRationalRoot, "coefficient is not rational", static_cast<long long>(j));
      mag = *root;
    } else {
      double s = 0.0;
      for (std::size_t l = 0; l < 2 * n; ++l) {
        s += static_cast<double>(inv.e[j][l]) * std::log(std::abs(flat[l]));
      }
      mag = std::exp(s / static_cast<double>(inv.q));
    }
    u[j] = negative ? T(-mag) : mag;
  }
  ABCoords<T> out(std::vector<T>(u.begin(), u.begin() + static_cast<long>(n)),
                  std::vector<T>(u.begin() + static_cast<long>(n), u.end()));
  if (!approx_equal(ab_to_xy(out), z)) {
    throw Error(ErrorCode::NoRealSolution, "sign system has no real solution");
  }
  return out;
}

/// The pentagram map in (a,b) coordinates.
template <Scalar T>
ABCoords<T> map_ab(const ABCoords<T>& c) {
  const long n = static_cast<long>(c.size());
  const long m = n / 3;
  std::vector<T> f(c.size());
  for (long j = 0; j < n; ++j) {
    f[j] = T(from_int<T>(1) + c.a(j) * c.b(j - 1));
    if (negligible(f[j], T(from_int<T>(1) + magnitude(T(c.a(j) * c.b(j - 1)))))) {
      throw Error(ErrorCode::SingularPoint, "1 + a_j b_{j-1} vanishes", j);
    }
  }
  auto F = [&](long j) -> const T& { return f[wrap(j, c.size())]; };
  std::vector<T> a(c.size()), b(c.size());
  for (long i = 0; i < n; ++i) {
    T pa = c.a(i + 2), pb = c.b(i - 1);
    for (long k = 1; k <= m; ++k) {
      pa *= F(i + 3 * k + 2) / F(i - 3 * k + 2);
      pb *= F(i - 3 * k) / F(i + 3 * k);
    }
    a[i] = pa;
    b[i] = pb;
  }
  return ABCoords<T>(std::move(a), std::move(b));
}

}  // namespace pentagram
