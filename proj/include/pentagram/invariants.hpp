#pragma once

// Monodromy invariants O_k, E_k as explicit signed polynomials in the 2n
// corner coordinates. Slot j < n is x_j, slot n + j is y_j.
//
// O-type factors: X_i = x_i y_i x_{i+1} and singles x_j. Two factors may not
// be "consecutive" (cyclic, mod n):
//   X_i, X_j  when j - i in {-2..2}
//   X_i, x_j  when j - i in {-1..2}
//   x_i, x_j  when j - i in {-1..1}
// A product of s triples and t singles has weight s + t and sign (-1)^t.
// E-type invariants are the image under x_j -> y_j, y_j -> x_{j+1}, which
// turns X_i into y_i x_{i+1} y_{i+1}.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pentagram/corner.hpp"
#include "pentagram/error.hpp"
#include "pentagram/projective.hpp"
#include "pentagram/scalar.hpp"

namespace pentagram {

enum class Family { O, E };

inline std::string family_prefix(Family f) { return f == Family::O ? "O" : "E"; }

/// Sparse exponent vector: (slot, power) pairs sorted by slot, powers > 0.
using Exponents = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

struct Factor {
  enum class Kind { Triple, Single };
  Kind kind;
  std::uint32_t index;
  friend bool operator==(const Factor&, const Factor&) = default;
};

struct SignedMonomial {
  int sign;
  std::vector<Factor> factors;
  Exponents exponents;
};

struct PolyInvariant {
  std::size_t n;
  std::size_t k;
  Family family;
  std::vector<SignedMonomial> terms;

  [[nodiscard]] std::string name() const { return family_prefix(family) + "_" + std::to_string(k); }
};

/// Consecutivity predicate on O-type factors; a factor is consecutive with
/// itself.
bool factors_consecutive(const Factor& f, const Factor& g, std::size_t n);

/// Exponents of an O-type factor product.
Exponents factor_exponents(const std::vector<Factor>& factors, std::size_t n);

/// All admissible monomials of weight k, 1 <= k <= floor(n/2), in
/// lexicographic order of their (index, kind) factor sequences.
PolyInvariant enumerate_admissible(std::size_t n, std::size_t k, Family family);

/// x_j -> y_j, y_j -> x_{j+1} applied to every slot.
PolyInvariant to_e_family(const PolyInvariant& o);

/// O_1 .. O_{floor(n/2)} then E_1 .. E_{floor(n/2)}.
std::vector<PolyInvariant> monodromy_invariants(std::size_t n);

/// Sparse polynomial with integer coefficients, used for exact symbolic
/// brackets.
class Polynomial {
 public:
  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial from_invariant(const PolyInvariant& inv);
  static Polynomial variable(std::size_t nvars, std::uint32_t slot);
  static Polynomial monomial(std::size_t nvars, const Exponents& e, long coeff = 1);

  [[nodiscard]] std::size_t nvars() const noexcept { return nvars_; }
  [[nodiscard]] const std::map<Exponents, mpz_class>& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Exponents& e, const mpz_class& c);
  Polynomial& operator+=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  template <Scalar T>
  T eval(const std::vector<T>& z) const;

 private:
  std::size_t nvars_;
  std::map<Exponents, mpz_class> terms_;
};

template <Scalar T>
T monomial_value(const Exponents& e, const std::vector<T>& z) {
  T v = from_int<T>(1);
  for (const auto& [slot, p] : e) {
    for (std::uint32_t r = 0; r < p; ++r) v *= z[slot];
  }
  return v;
}

template <Scalar T>
T Polynomial::eval(const std::vector<T>& z) const {
  if (z.size() != nvars_) throw Error(ErrorCode::DimensionMismatch, "polynomial arity");
  T acc = from_int<T>(0);
  for (const auto& [e, c] : terms_) {
    if constexpr (is_exact_v<T>) {
      acc += Rational(c) * monomial_value(e, z);
    } else {
      acc += c.get_d() * monomial_value(e, z);
    }
  }
  return acc;
}

namespace detail {
inline void require_dims(const PolyInvariant& inv, std::size_t n) {
  if (inv.n != n) {
    throw Error(ErrorCode::DimensionMismatch,
                inv.name() + " is for n = " + std::to_string(inv.n) + ", point has n = " + std::to_string(n));
  }
}
}  // namespace detail

template <Scalar T>
T eval_invariant(const PolyInvariant& inv, const CornerCoords<T>& z) {
  detail::require_dims(inv, z.size());
  const std::vector<T> f = z.flat();
  T acc = from_int<T>(0);
  for (const auto& t : inv.terms) {
    const T v = monomial_value(t.exponents, f);
    if (t.sign > 0) {
      acc += v;
    } else {
      acc -= v;
    }
  }
  return acc;
}

/// Sum of absolute values of the terms; the natural scale for float drift.
template <Scalar T>
T term_magnitude(const PolyInvariant& inv, const CornerCoords<T>& z) {
  detail::require_dims(inv, z.size());
  const std::vector<T> f = z.flat();
  T acc = from_int<T>(0);
  for (const auto& t : inv.terms) acc += magnitude(monomial_value(t.exponents, f));
  return acc;
}

template <Scalar T>
std::vector<T> gradient_of_exponents(const std::vector<std::pair<int, const Exponents*>>& terms,
                                     const std::vector<T>& f) {
  std::vector<T> g(f.size(), from_int<T>(0));
  for (const auto& [sign, ep] : terms) {
    const Exponents& e = *ep;
    for (std::size_t a = 0; a < e.size(); ++a) {
      T v = from_int<T>(static_cast<long>(e[a].second) * sign);
      for (std::size_t b = 0; b < e.size(); ++b) {
        const std::uint32_t p = b == a ? e[b].second - 1 : e[b].second;
        for (std::uint32_t r = 0; r < p; ++r) v *= f[e[b].first];
      }
      g[e[a].first] += v;
    }
  }
  return g;
}

/// Exact partial derivatives, slot order as CornerCoords::flat().
template <Scalar T>
std::vector<T> gradient_invariant(const PolyInvariant& inv, const CornerCoords<T>& z) {
  detail::require_dims(inv, z.size());
  std::vector<std::pair<int, const Exponents*>> terms;
  terms.reserve(inv.terms.size());
  for (const auto& t : inv.terms) terms.emplace_back(t.sign, &t.exponents);
  return gradient_of_exponents(terms, z.flat());
}

template <Scalar T>
std::vector<T> gradient_polynomial(const Polynomial& p, const std::vector<T>& z) {
  if (z.size() != p.nvars()) throw Error(ErrorCode::DimensionMismatch, "polynomial arity");
  std::vector<T> g(z.size(), from_int<T>(0));
  for (const auto& [e, c] : p.terms()) {
    T coeff;
    if constexpr (is_exact_v<T>) {
      coeff = Rational(c);
    } else {
      coeff = c.get_d();
    }
    for (std::size_t a = 0; a < e.size(); ++a) {
      T v = T(coeff * from_int<T>(static_cast<long>(e[a].second)));
      for (std::size_t b = 0; b < e.size(); ++b) {
        const std::uint32_t pw = b == a ? e[b].second - 1 : e[b].second;
        for (std::uint32_t r = 0; r < pw; ++r) v *= z[e[b].first];
      }
      g[e[a].first] += v;
    }
  }
  return g;
}

/// Casimir polynomials: O_n, E_n, and for even n the alternate-product pairs
/// named with a trailing '*'.
std::vector<std::pair<std::string, Polynomial>> casimir_polynomials(std::size_t n);

/// Ω1 = tr(M)^3 / det M, Ω2 = tr(M^{-1})^3 / det M^{-1}.
template <Scalar T>
std::pair<T, T> omega_invariants(const Mat3<T>& m) {
  const Mat3<T> inv = inverse(m);
  const T d = determinant(m);
  const T t = trace(m), ti = trace(inv);
  return {T(t * t * t / d), T(ti * ti * ti * d)};
}

template <Scalar T>
T product_of(const std::vector<T>& v) {
  T p = from_int<T>(1);
  for (const auto& e : v) p *= e;
  return p;
}

/// (O_n^2 E_n Ω1, O_n E_n^2 Ω2).
template <Scalar T>
std::pair<T, T> omega_tilde(const CornerCoords<T>& z, const Mat3<T>& m) {
  const auto [w1, w2] = omega_invariants(m);
  const T on = product_of(z.x()), en = product_of(z.y());
  return {T(on * on * en * w1), T(on * en * en * w2)};
}

template <Scalar T>
struct TraceIdentityReport {
  T sum_o;              // Σ_{k=1}^{floor(n/2)} O_k
  T sum_e;              // Σ_{k=1}^{floor(n/2)} E_k
  T tilde1;             // O_n^2 E_n Ω1
  T tilde2;             // O_n E_n^2 Ω2
  T literal_residual1;  // tilde1 - sum_o
  T literal_residual2;  // tilde2 - sum_e
  T cubic_residual1;    // O_n^2 E_n Ω2 - (1 + sum_o)^3
  T cubic_residual2;    // O_n E_n^2 Ω1 - (1 + sum_e)^3
};

template <Scalar T>
TraceIdentityReport<T> trace_identities(const CornerCoords<T>& z, const Mat3<T>& m) {
  const std::size_t n = z.size();
  T so = from_int<T>(0), se = from_int<T>(0);
  for (const auto& inv : monodromy_invariants(n)) {
    (inv.family == Family::O ? so : se) += eval_invariant(inv, z);
  }
  const auto [w1, w2] = omega_invariants(m);
  const auto [t1, t2] = omega_tilde(z, m);
  const T on = product_of(z.x()), en = product_of(z.y());
  const T one = from_int<T>(1);
  const T co = T(one + so), ce = T(one + se);
  return {so,
          se,
          t1,
          t2,
          T(t1 - so),
          T(t2 - se),
          T(on * on * en * w2 - co * co * co),
          T(on * en * en * w1 - ce * ce * ce)};
}

}  // namespace pentagram
