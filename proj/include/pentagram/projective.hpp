#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "pentagram/error.hpp"
#include "pentagram/scalar.hpp"

namespace pentagram {

template <Scalar T>
using Vec3 = std::array<T, 3>;

/// Row-major 3x3 matrix; m[r][c].
template <Scalar T>
using Mat3 = std::array<std::array<T, 3>, 3>;

template <Scalar T>
Vec3<T> cross(const Vec3<T>& p, const Vec3<T>& q) {
  return {T(p[1] * q[2] - p[2] * q[1]), T(p[2] * q[0] - p[0] * q[2]),
          T(p[0] * q[1] - p[1] * q[0])};
}

template <Scalar T>
T dot(const Vec3<T>& p, const Vec3<T>& q) {
  return T(p[0] * q[0] + p[1] * q[1] + p[2] * q[2]);
}

/// det of the matrix with columns p, q, r.
template <Scalar T>
T det3(const Vec3<T>& p, const Vec3<T>& q, const Vec3<T>& r) {
  return dot(p, cross(q, r));
}

/// Sum of absolute values; a cheap norm for relative tolerances.
template <Scalar T>
T norm1(const Vec3<T>& p) {
  return T(magnitude(p[0]) + magnitude(p[1]) + magnitude(p[2]));
}

template <Scalar T>
bool all_zero(const Vec3<T>& p) {
  return is_zero(p[0]) && is_zero(p[1]) && is_zero(p[2]);
}

template <Scalar T>
Mat3<T> identity3() {
  Mat3<T> m{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m[r][c] = from_int<T>(r == c ? 1 : 0);
  return m;
}

template <Scalar T>
Vec3<T> mat_vec(const Mat3<T>& m, const Vec3<T>& v) {
  Vec3<T> out;
  for (int r = 0; r < 3; ++r) out[r] = T(m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2]);
  return out;
}

template <Scalar T>
Mat3<T> multiply(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      out[r][c] = T(a[r][0] * b[0][c] + a[r][1] * b[1][c] + a[r][2] * b[2][c]);
  return out;
}

template <Scalar T>
T determinant(const Mat3<T>& m) {
  return T(m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]));
}

template <Scalar T>
T trace(const Mat3<T>& m) {
  return T(m[0][0] + m[1][1] + m[2][2]);
}

template <Scalar T>
Mat3<T> scaled(const Mat3<T>& m, const T& s) {
  Mat3<T> out = m;
  for (auto& row : out)
    for (auto& e : row) e *= s;
  return out;
}

template <Scalar T>
Mat3<T> inverse(const Mat3<T>& m) {
  const T d = determinant(m);
  T scale = from_int<T>(0);
  for (const auto& row : m)
    for (const auto& e : row) scale = std::max(scale, magnitude(e));
  if (is_zero(d) || negligible(d, T(scale * scale * scale))) {
    throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");
  }
  Mat3<T> out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const int r1 = (c + 1) % 3, r2 = (c + 2) % 3;
      const int c1 = (r + 1) % 3, c2 = (r + 2) % 3;
      out[r][c] = T((m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) / d);
    }
  }
  return out;
}

/// A point of the projective plane, stored as a nonzero homogeneous triple.
template <Scalar T>
class HomPoint {
 public:
  HomPoint() = default;
  explicit HomPoint(const Vec3<T>& coords) : coords_(coords) {
    if (all_zero(coords_)) throw Error(ErrorCode::InvalidArgument, "zero homogeneous triple");
  }
  HomPoint(T x, T y, T w) : HomPoint(Vec3<T>{std::move(x), std::move(y), std::move(w)}) {}

  [[nodiscard]] const Vec3<T>& coords() const noexcept { return coords_; }
  [[nodiscard]] const T& operator[](std::size_t i) const { return coords_[i]; }

 private:
  Vec3<T> coords_{from_int<T>(0), from_int<T>(0), from_int<T>(1)};
};

/// A line of the projective plane as a covector; p lies on L iff <L, p> = 0.
template <Scalar T>
class ProjLine {
 public:
  ProjLine() = default;
  explicit ProjLine(const Vec3<T>& coeffs) : coeffs_(coeffs) {
    if (all_zero(coeffs_)) throw Error(ErrorCode::InvalidArgument, "zero line covector");
  }
  ProjLine(T a, T b, T c) : ProjLine(Vec3<T>{std::move(a), std::move(b), std::move(c)}) {}

  [[nodiscard]] const Vec3<T>& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] const T& operator[](std::size_t i) const { return coeffs_[i]; }

 private:
  Vec3<T> coeffs_{from_int<T>(0), from_int<T>(0), from_int<T>(1)};
};

/// Scale a triple to a canonical representative: coprime integers with the
/// first nonzero entry positive (exact), or unit max-norm (float).
template <Scalar T>
Vec3<T> normalized(const Vec3<T>& v) {
  if constexpr (is_exact_v<T>) {
    mpz_class den_lcm = 1;
    for (const auto& e : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), e.get_den().get_mpz_t());
    std::array<mpz_class, 3> ints;
    mpz_class num_gcd = 0;
    for (int i = 0; i < 3; ++i) {
      ints[i] = v[i].get_num() * (den_lcm / v[i].get_den());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), ints[i].get_mpz_t());
    }
    if (sgn(num_gcd) == 0) return v;
    int lead = 0;
    while (sgn(ints[lead]) == 0) ++lead;
    if (sgn(ints[lead]) < 0) num_gcd = -num_gcd;
    Vec3<T> out;
    for (int i = 0; i < 3; ++i) out[i] = Rational(mpz_class(ints[i] / num_gcd));
    return out;
  } else {
    const double m = std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
    if (m == 0.0) return v;
    return {v[0] / m, v[1] / m, v[2] / m};
  }
}

template <Scalar T>
HomPoint<T> normalized(const HomPoint<T>& p) {
  return HomPoint<T>(normalized(p.coords()));
}

template <Scalar T>
ProjLine<T> normalized(const ProjLine<T>& l) {
  return ProjLine<T>(normalized(l.coords()));
}

/// True iff the triples are proportional (exact), or their cross product is
/// negligible relative to the product of norms (float).
template <Scalar T>
bool proportional(const Vec3<T>& p, const Vec3<T>& q) {
  const Vec3<T> c = cross(p, q);
  return negligible(norm1(c), T(norm1(p) * norm1(q)));
}

template <Scalar T>
bool same_point(const HomPoint<T>& p, const HomPoint<T>& q) {
  return proportional(p.coords(), q.coords());
}

template <Scalar T>
bool same_line(const ProjLine<T>& l, const ProjLine<T>& m) {
  return proportional(l.coeffs(), m.coeffs());
}

template <Scalar T>
bool incident(const HomPoint<T>& p, const ProjLine<T>& l) {
  return negligible(dot(p.coords(), l.coeffs()), T(norm1(p.coords()) * norm1(l.coeffs())));
}

template <Scalar T>
ProjLine<T> join(const HomPoint<T>& p, const HomPoint<T>& q) {
  if (same_point(p, q)) throw Error(ErrorCode::CoincidentPoints, "join of a point with itself");
  Vec3<T> c = cross(p.coords(), q.coords());
  if constexpr (is_exact_v<T>) c = normalized(c);
  return ProjLine<T>(c);
}

template <Scalar T>
HomPoint<T> meet(const ProjLine<T>& l, const ProjLine<T>& m) {
  if (same_line(l, m)) throw Error(ErrorCode::CoincidentLines, "meet of a line with itself");
  Vec3<T> c = cross(l.coeffs(), m.coeffs());
  if constexpr (is_exact_v<T>) c = normalized(c);
  return HomPoint<T>(c);
}

template <Scalar T>
bool general_position(const HomPoint<T>& p, const HomPoint<T>& q, const HomPoint<T>& r) {
  const T d = det3(p.coords(), q.coords(), r.coords());
  if (is_zero(d)) return false;
  if constexpr (is_exact_v<T>) {
    return true;
  } else {
    return !negligible(d, norm1(p.coords()) * norm1(q.coords()) * norm1(r.coords()));
  }
}

/// Cross-ratio of four points known to lie on `line`, with the convention
/// [t1,t2,t3,t4] = (t1-t2)(t3-t4) / ((t1-t3)(t2-t4)). The points are reduced
/// to 2-vectors by dropping the coordinate where the line covector is
/// largest, and the ratio is evaluated as (d12 d34) / (d13 d24) with d_ij the
/// 2x2 determinants.
template <Scalar T>
T cross_ratio_on_line(const ProjLine<T>& line, const HomPoint<T>& p1, const HomPoint<T>& p2,
                      const HomPoint<T>& p3, const HomPoint<T>& p4) {
  const auto& l = line.coeffs();
  int drop = 0;
  for (int i = 1; i < 3; ++i)
    if (magnitude(l[i]) > magnitude(l[drop])) drop = i;
  const int u = drop == 0 ? 1 : 0;
  const int v = drop == 2 ? 1 : 2;
  const std::array<const Vec3<T>*, 4> pts{&p1.coords(), &p2.coords(), &p3.coords(), &p4.coords()};
  auto d = [&](int i, int j) {
    return T((*pts[i])[u] * (*pts[j])[v] - (*pts[i])[v] * (*pts[j])[u]);
  };
  const T d13 = d(0, 2);
  const T d24 = d(1, 3);
  T scale13 = T(norm1(p1.coords()) * norm1(p3.coords()));
  T scale24 = T(norm1(p2.coords()) * norm1(p4.coords()));
  if (negligible(d13, scale13) || negligible(d24, scale24)) {
    throw Error(ErrorCode::DegenerateQuadruple, "p1 = p3 or p2 = p4");
  }
  return T(d(0, 1) * d(2, 3) / (d13 * d24));
}

/// Cross-ratio of four collinear points; the common line is found from the
/// best-separated pair and the remaining points are checked against it.
template <Scalar T>
T cross_ratio(const HomPoint<T>& p1, const HomPoint<T>& p2, const HomPoint<T>& p3,
              const HomPoint<T>& p4) {
  const std::array<const HomPoint<T>*, 4> pts{&p1, &p2, &p3, &p4};
  int bi = -1, bj = -1;
  double best = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const Vec3<T> c = cross(pts[i]->coords(), pts[j]->coords());
      if (all_zero(c)) continue;
      const double score = to_double(norm1(c)) / (to_double(norm1(pts[i]->coords())) *
                                                  to_double(norm1(pts[j]->coords())));
      if (bi < 0 || score > best) {
        best = score;
        bi = i;
        bj = j;
      }
    }
  }
  if (bi < 0) throw Error(ErrorCode::DegenerateQuadruple, "all four points coincide");
  const ProjLine<T> line = join(*pts[bi], *pts[bj]);
  for (const auto* p : pts) {
    if (!incident(*p, line)) throw Error(ErrorCode::NotCollinear, "points are not collinear");
  }
  return cross_ratio_on_line(line, p1, p2, p3, p4);
}

}  // namespace pentagram
