#pragma once

// Both brackets are log-canonical: {z_α, z_β} = ω_αβ z_α z_β with a constant
// antisymmetric integer matrix ω. Contributions from rules whose index
// offsets collide mod n are summed.
//
//   XY: {x_i, x_{i+1}} = -x_i x_{i+1},  {y_i, y_{i+1}} = +y_i y_{i+1}
//   AB: {a_i, a_j} = Σ_{k=1..m} (δ_{i,j+3k} - δ_{i,j-3k}) a_i a_j, b block
//       with the opposite sign, {a, b} = 0.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pentagram/corner.hpp"
#include "pentagram/difference_eq.hpp"
#include "pentagram/invariants.hpp"
#include "pentagram/linalg.hpp"

namespace pentagram {

struct PoissonStructure {
  std::string name;
  std::size_t n;
  std::vector<std::vector<int>> omega;  // 2n x 2n

  [[nodiscard]] std::size_t dim() const noexcept { return 2 * n; }
};

PoissonStructure xy_structure(std::size_t n);
PoissonStructure ab_structure(std::size_t n);

template <Scalar T>
Matrix<T> poisson_matrix(const PoissonStructure& s, const std::vector<T>& z) {
  if (z.size() != s.dim()) throw Error(ErrorCode::DimensionMismatch, "point does not match the structure");
  Matrix<T> p(s.dim(), s.dim());
  for (std::size_t a = 0; a < s.dim(); ++a)
    for (std::size_t b = 0; b < s.dim(); ++b)
      if (s.omega[a][b] != 0) p(a, b) = T(from_int<T>(s.omega[a][b]) * z[a] * z[b]);
  return p;
}

template <Scalar T>
std::vector<T> ab_flat(const ABCoords<T>& c) {
  std::vector<T> out(c.a());
  out.insert(out.end(), c.b().begin(), c.b().end());
  return out;
}

/// Σ ∂_α f Π_αβ(z) ∂_β g.
template <Scalar T>
T bracket(const std::vector<T>& df, const std::vector<T>& dg, const std::vector<T>& z, const PoissonStructure& s) {
  if (df.size() != s.dim() || dg.size() != s.dim() || z.size() != s.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "gradient or point does not match the structure");
  }
  T acc = from_int<T>(0);
  for (std::size_t a = 0; a < s.dim(); ++a) {
    if (is_zero(df[a])) continue;
    for (std::size_t b = 0; b < s.dim(); ++b) {
      if (s.omega[a][b] == 0 || is_zero(dg[b])) continue;
      acc += T(from_int<T>(s.omega[a][b]) * df[a] * z[a] * z[b] * dg[b]);
    }
  }
  return acc;
}

/// Same sum with every term taken in absolute value.
template <Scalar T>
T bracket_scale(const std::vector<T>& df, const std::vector<T>& dg, const std::vector<T>& z,
                const PoissonStructure& s) {
  T acc = from_int<T>(0);
  for (std::size_t a = 0; a < s.dim(); ++a)
    for (std::size_t b = 0; b < s.dim(); ++b)
      if (s.omega[a][b] != 0) acc += magnitude(T(df[a] * z[a] * z[b] * dg[b]));
  return acc;
}

/// Exact symbolic bracket of two polynomials.
Polynomial bracket(const Polynomial& f, const Polynomial& g, const PoissonStructure& s);

/// {{f,g},h} + {{g,h},f} + {{h,f},g} as a polynomial.
Polynomial jacobiator(const Polynomial& f, const Polynomial& g, const Polynomial& h, const PoissonStructure& s);

template <Scalar T>
T verify_jacobi(const PoissonStructure& s, const std::vector<T>& z, const Polynomial& f, const Polynomial& g,
                const Polynomial& h) {
  return jacobiator(f, g, h, s).eval(z);
}

/// A residual together with the scale it should be compared against.
template <Scalar T>
struct Residual {
  T value = from_int<T>(0);
  T scale = from_int<T>(0);

  [[nodiscard]] double relative() const {
    const double v = std::abs(to_double(value));
    const double sc = to_double(scale);
    return sc > 0 ? v / sc : v;
  }
  [[nodiscard]] bool exact_zero() const { return is_zero(value); }

  void absorb(const T& v, const T& sc) {
    if (Residual{v, sc}.relative() > relative() || (is_zero(value) && !is_zero(v))) {
      value = v;
      scale = sc;
    }
  }
};

template <Scalar T>
struct PairResidual {
  std::string f;
  std::string g;
  Residual<T> residual;
};

/// All brackets {I, J} of monodromy invariants, pairs I <= J in the order of
/// monodromy_invariants(n).
template <Scalar T>
std::vector<PairResidual<T>> verify_commuting_invariants(const CornerCoords<T>& z) {
  const std::size_t n = z.size();
  const PoissonStructure s = xy_structure(n);
  const auto invs = monodromy_invariants(n);
  const std::vector<T> flat = z.flat();
  std::vector<std::vector<T>> grads;
  for (const auto& inv : invs) grads.push_back(gradient_invariant(inv, z));
  std::vector<PairResidual<T>> out;
  for (std::size_t i = 0; i < invs.size(); ++i) {
    for (std::size_t j = i; j < invs.size(); ++j) {
      out.push_back({invs[i].name(), invs[j].name(),
                     {bracket(grads[i], grads[j], flat, s), bracket_scale(grads[i], grads[j], flat, s)}});
    }
  }
  return out;
}

/// Bracket of every Casimir polynomial against every coordinate function.
template <Scalar T>
std::vector<PairResidual<T>> verify_casimirs(const CornerCoords<T>& z) {
  const std::size_t n = z.size();
  const PoissonStructure s = xy_structure(n);
  const std::vector<T> flat = z.flat();
  std::vector<PairResidual<T>> out;
  for (const auto& [name, poly] : casimir_polynomials(n)) {
    const std::vector<T> g = gradient_polynomial(poly, flat);
    for (std::size_t slot = 0; slot < 2 * n; ++slot) {
      std::vector<T> e(2 * n, from_int<T>(0));
      e[slot] = from_int<T>(1);
      const std::string coord = (slot < n ? "x_" : "y_") + std::to_string(slot % n);
      out.push_back({name, coord, {bracket(g, e, flat, s), bracket_scale(g, e, flat, s)}});
    }
  }
  return out;
}

/// Largest |{f, z_α}| over coordinates; a non-Casimir control.
template <Scalar T>
T max_coordinate_bracket(const PolyInvariant& f, const CornerCoords<T>& z) {
  const PoissonStructure s = xy_structure(z.size());
  const std::vector<T> flat = z.flat();
  const std::vector<T> g = gradient_invariant(f, z);
  T best = from_int<T>(0);
  for (std::size_t slot = 0; slot < s.dim(); ++slot) {
    std::vector<T> e(s.dim(), from_int<T>(0));
    e[slot] = from_int<T>(1);
    best = std::max(best, magnitude(bracket(g, e, flat, s)));
  }
  return best;
}

template <Scalar T>
std::size_t corank(const PoissonStructure& s, const std::vector<T>& z) {
  return s.dim() - rank(poisson_matrix(s, z));
}

/// Jacobian of map_xy at z, from the log-derivatives of
///   T*x_i = x_i W_{i-1} / W_{i+1},  T*y_i = y_{i+1} W_{i+2} / W_i,  W_j = 1 - x_j y_j.
template <Scalar T>
Matrix<T> map_xy_jacobian(const CornerCoords<T>& z) {
  const CornerCoords<T> tz = map_xy(z);
  const std::size_t n = z.size();
  const long ln = static_cast<long>(n);
  Matrix<T> j(2 * n, 2 * n);
  // d log W_k / dx_k = -y_k / W_k, d log W_k / dy_k = -x_k / W_k.
  auto add_w = [&](std::size_t row, long k, long sign, const T& value) {
    const std::size_t kk = wrap(k, n);
    const T w = one_minus_xy(z, k);
    j(row, kk) += T(from_int<T>(-sign) * value * z.y(k) / w);
    j(row, n + kk) += T(from_int<T>(-sign) * value * z.x(k) / w);
  };
  for (long i = 0; i < ln; ++i) {
    const std::size_t rx = static_cast<std::size_t>(i), ry = n + rx;
    const T& vx = tz.x()[rx];
    const T& vy = tz.y()[rx];
    j(rx, rx) += T(vx / z.x(i));
    add_w(rx, i - 1, 1, vx);
    add_w(rx, i + 1, -1, vx);
    j(ry, n + wrap(i + 1, n)) += T(vy / z.y(i + 1));
    add_w(ry, i + 2, 1, vy);
    add_w(ry, i, -1, vy);
  }
  return j;
}

/// max |J Π(z) Jᵀ - Π(T z)| entrywise, scaled by the largest entry of Π(T z).
template <Scalar T>
Residual<T> verify_map_invariance(const CornerCoords<T>& z) {
  const PoissonStructure s = xy_structure(z.size());
  const Matrix<T> j = map_xy_jacobian(z);
  const Matrix<T> lhs = j * poisson_matrix(s, z.flat()) * j.transpose();
  const Matrix<T> rhs = poisson_matrix(s, map_xy(z).flat());
  return {max_abs(lhs - rhs), max_abs(rhs)};
}

/// Jacobian of ab_to_xy: a monomial map, so J_lα = z_l A_lα / u_α.
template <Scalar T>
Matrix<T> ab_to_xy_jacobian(const ABCoords<T>& c) {
  const std::size_t n = c.size();
  const Matrix<Rational> a = ab_exponent_matrix(n);
  const std::vector<T> z = ab_to_xy(c).flat();
  const std::vector<T> u = ab_flat(c);
  Matrix<T> j(2 * n, 2 * n);
  for (std::size_t l = 0; l < 2 * n; ++l)
    for (std::size_t al = 0; al < 2 * n; ++al)
      if (!is_zero(a(l, al))) j(l, al) = T(from_int<T>(a(l, al).get_num().get_si()) * z[l] / u[al]);
  return j;
}

/// max |J Π_AB(c) Jᵀ - Π_XY(ab_to_xy(c))|.
template <Scalar T>
Residual<T> verify_structure_transport(const ABCoords<T>& c) {
  const std::size_t n = c.size();
  const Matrix<T> j = ab_to_xy_jacobian(c);
  const Matrix<T> lhs = j * poisson_matrix(ab_structure(n), ab_flat(c)) * j.transpose();
  const Matrix<T> rhs = poisson_matrix(xy_structure(n), ab_to_xy(c).flat());
  return {max_abs(lhs - rhs), max_abs(rhs)};
}

/// Rank of the Jacobian of O_1..O_{n/2}, E_1..E_{n/2}.
template <Scalar T>
std::size_t independence_rank(const CornerCoords<T>& z) {
  const auto invs = monodromy_invariants(z.size());
  Matrix<T> m(invs.size(), 2 * z.size());
  for (std::size_t r = 0; r < invs.size(); ++r) {
    const auto g = gradient_invariant(invs[r], z);
    for (std::size_t c = 0; c < g.size(); ++c) m(r, c) = g[c];
  }
  return rank(m);
}

struct LiouvilleCount {
  std::size_t dim;
  std::size_t poisson_rank;
  std::size_t hamiltonian_rank;  // rank of {Π ∇I} over the non-Casimir invariants
  std::size_t non_casimir_count;
};

/// Dimension bookkeeping for complete integrability on symplectic leaves.
template <Scalar T>
LiouvilleCount liouville_count(const CornerCoords<T>& z) {
  const std::size_t n = z.size();
  const PoissonStructure s = xy_structure(n);
  const Matrix<T> p = poisson_matrix(s, z.flat());
  std::vector<PolyInvariant> movers;
  for (auto& inv : monodromy_invariants(n)) {
    if (n % 2 == 0 && inv.k == n / 2) continue;
    movers.push_back(std::move(inv));
  }
  Matrix<T> h(movers.size(), 2 * n);
  for (std::size_t r = 0; r < movers.size(); ++r) {
    const auto g = gradient_invariant(movers[r], z);
    for (std::size_t a = 0; a < 2 * n; ++a) {
      T acc = from_int<T>(0);
      for (std::size_t b = 0; b < 2 * n; ++b)
        if (!is_zero(p(a, b))) acc += p(a, b) * g[b];
      h(r, a) = acc;
    }
  }
  return {2 * n, rank(p), rank(h), movers.size()};
}

}  // namespace pentagram
