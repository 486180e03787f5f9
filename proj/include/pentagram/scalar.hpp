#pragma once

// Two realizations of the ground field: exact rationals (GMP) and doubles.
// Generic code is written once against either type; the handful of places
// where the two differ (zero tests, roots, formatting) go through the
// overloads below.

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pentagram {

using Rational = mpq_class;

template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

template <class T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

/// Relative tolerance used by every float-mode comparison. Defaults to 1e-12,
/// or to $PENTAGRAM_EPSILON when set at startup.
double tolerance() noexcept;
void set_tolerance(double eps);

inline bool is_zero(const Rational& v) { return sgn(v) == 0; }
inline bool is_zero(double v) { return v == 0.0; }

/// Exact zero test in rational mode; |v| <= eps * scale in float mode.
inline bool negligible(const Rational& v, const Rational& /*scale*/) { return sgn(v) == 0; }
inline bool negligible(double v, double scale) { return std::abs(v) <= tolerance() * scale; }

inline Rational magnitude(const Rational& v) { return Rational(abs(v)); }
inline double magnitude(double v) { return std::abs(v); }

inline int sign_of(const Rational& v) { return sgn(v); }
inline int sign_of(double v) { return (v > 0) - (v < 0); }

inline double to_double(const Rational& v) { return v.get_d(); }
inline double to_double(double v) { return v; }

template <Scalar T>
T from_int(long v) {
  if constexpr (is_exact_v<T>) {
    return Rational(v);
  } else {
    return static_cast<double>(v);
  }
}

/// Exact binary value of a double as a rational.
template <Scalar T>
T from_double(double v) {
  if constexpr (is_exact_v<T>) {
    Rational r(v);
    r.canonicalize();
    return r;
  } else {
    return v;
  }
}

/// Integer power with negative exponents allowed.
template <Scalar T>
T power(const T& base, long exponent) {
  T result = from_int<T>(1);
  T b = base;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                 : static_cast<unsigned long>(exponent);
  while (e != 0) {
    if (e & 1UL) result *= b;
    b *= b;
    e >>= 1;
  }
  if (exponent < 0) result = from_int<T>(1) / result;
  return result;
}

/// Real k-th root. Rational mode returns a value only when the root is itself
/// rational; float mode fails only for even roots of negative numbers.
std::optional<Rational> real_root(const Rational& v, unsigned k);
std::optional<double> real_root(double v, unsigned k);

/// "num/den" always, so serialized values round-trip bit-exactly.
std::string format_scalar(const Rational& v);
/// Shortest round-trip decimal.
std::string format_scalar(double v);

/// Accepts "p/q", "p", or a decimal literal (converted exactly).
Rational parse_rational(std::string_view text);

}  // namespace pentagram
