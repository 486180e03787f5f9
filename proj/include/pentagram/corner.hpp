#pragma once

// The pentagram map, the rescaling action, and the Casimir functions, all in
// corner-invariant coordinates.
//
// Indexing table (0-based, cyclic mod n; the 1-based formulas translate by a
// uniform relabeling, so every offset below is unchanged):
//   T*x_i = x_i   (1 - x_{i-1} y_{i-1}) / (1 - x_{i+1} y_{i+1})
//   T*y_i = y_{i+1} (1 - x_{i+2} y_{i+2}) / (1 - x_i y_i)
//   R_t : (x_i, y_i) -> (t x_i, y_i / t)

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pentagram/error.hpp"
#include "pentagram/scalar.hpp"

namespace pentagram {

inline std::size_t wrap(long i, std::size_t n) {
  const long m = static_cast<long>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

template <Scalar T>
class CornerCoords {
 public:
  CornerCoords(std::vector<T> x, std::vector<T> y) : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size()) {
      throw Error(ErrorCode::DimensionMismatch, "x and y must have the same length");
    }
    if (x_.size() < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 corners");
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (is_zero(x_[i])) throw Error(ErrorCode::ZeroCoordinate, "x is zero", static_cast<long long>(i));
      if (is_zero(y_[i])) throw Error(ErrorCode::ZeroCoordinate, "y is zero", static_cast<long long>(i));
    }
  }

  static CornerCoords uniform(std::size_t n, const T& x, const T& y) {
    return CornerCoords(std::vector<T>(n, x), std::vector<T>(n, y));
  }

  [[nodiscard]] std::size_t size() const noexcept { return x_.size(); }
  [[nodiscard]] const std::vector<T>& x() const noexcept { return x_; }
  [[nodiscard]] const std::vector<T>& y() const noexcept { return y_; }
  [[nodiscard]] const T& x(long i) const { return x_[wrap(i, x_.size())]; }
  [[nodiscard]] const T& y(long i) const { return y_[wrap(i, y_.size())]; }

  /// Flat 2n-vector (x_0..x_{n-1}, y_0..y_{n-1}); slot order used by gradients.
  [[nodiscard]] std::vector<T> flat() const {
    std::vector<T> out(x_);
    out.insert(out.end(), y_.begin(), y_.end());
    return out;
  }

  static CornerCoords from_flat(const std::vector<T>& z) {
    if (z.size() % 2 != 0) throw Error(ErrorCode::DimensionMismatch, "odd flat length");
    const auto n = static_cast<long>(z.size() / 2);
    return CornerCoords(std::vector<T>(z.begin(), z.begin() + n), std::vector<T>(z.begin() + n, z.end()));
  }

  friend bool operator==(const CornerCoords& a, const CornerCoords& b) {
    return a.x_ == b.x_ && a.y_ == b.y_;
  }

 private:
  std::vector<T> x_;
  std::vector<T> y_;
};

template <Scalar T>
T one_minus_xy(const CornerCoords<T>& z, long i) {
  return T(from_int<T>(1) - z.x(i) * z.y(i));
}

/// Throws SingularPoint (with the offending index) when some 1 - x_i y_i
/// vanishes, exactly or below tolerance.
template <Scalar T>
void require_regular(const CornerCoords<T>& z) {
  const long n = static_cast<long>(z.size());
  for (long i = 0; i < n; ++i) {
    if (negligible(one_minus_xy(z, i), from_int<T>(1))) {
      throw Error(ErrorCode::SingularPoint, "1 - x_i y_i vanishes", i);
    }
  }
}

template <Scalar T>
CornerCoords<T> map_xy(const CornerCoords<T>& z) {
  require_regular(z);
  const long n = static_cast<long>(z.size());
  std::vector<T> w(z.size());
  for (long i = 0; i < n; ++i) w[i] = one_minus_xy(z, i);
  auto W = [&](long i) -> const T& { return w[wrap(i, z.size())]; };
  std::vector<T> x(z.size()), y(z.size());
  for (long i = 0; i < n; ++i) {
    x[i] = z.x(i) * W(i - 1) / W(i + 1);
    y[i] = z.y(i + 1) * W(i + 2) / W(i);
  }
  return CornerCoords<T>(std::move(x), std::move(y));
}

template <Scalar T>
CornerCoords<T> rescale(const CornerCoords<T>& z, const T& t) {
  if (is_zero(t)) throw Error(ErrorCode::ZeroScale, "rescaling by zero");
  std::vector<T> x(z.x()), y(z.y());
  for (auto& v : x) v *= t;
  for (auto& v : y) v /= t;
  return CornerCoords<T>(std::move(x), std::move(y));
}

/// z shifted so that result_i = z_{i+s}.
template <Scalar T>
CornerCoords<T> cyclic_shift(const CornerCoords<T>& z, long s) {
  const long n = static_cast<long>(z.size());
  std::vector<T> x(z.size()), y(z.size());
  for (long i = 0; i < n; ++i) {
    x[i] = z.x(i + s);
    y[i] = z.y(i + s);
  }
  return CornerCoords<T>(std::move(x), std::move(y));
}

template <Scalar T>
bool approx_equal(const CornerCoords<T>& a, const CornerCoords<T>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const T sx = T(magnitude(a.x()[i]) + magnitude(b.x()[i]));
    const T sy = T(magnitude(a.y()[i]) + magnitude(b.y()[i]));
    if (!negligible(T(a.x()[i] - b.x()[i]), sx) || !negligible(T(a.y()[i] - b.y()[i]), sy)) {
      return false;
    }
  }
  return true;
}

/// Smallest s in [0, n) with a = cyclic_shift(b, s), if any.
template <Scalar T>
std::optional<std::size_t> find_cyclic_shift(const CornerCoords<T>& a, const CornerCoords<T>& b) {
  if (a.size() != b.size()) return std::nullopt;
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (approx_equal(a, cyclic_shift(b, static_cast<long>(s)))) return s;
  }
  return std::nullopt;
}

/// O_n, E_n, and for even n also O_{n/2}, E_{n/2} as sums of alternate
/// products (both plus-signed).
template <Scalar T>
std::vector<std::pair<std::string, T>> casimirs(const CornerCoords<T>& z) {
  const std::size_t n = z.size();
  T on = from_int<T>(1), en = from_int<T>(1);
  for (std::size_t i = 0; i < n; ++i) {
    on *= z.x()[i];
    en *= z.y()[i];
  }
  std::vector<std::pair<std::string, T>> out;
  out.emplace_back("O_" + std::to_string(n), on);
  out.emplace_back("E_" + std::to_string(n), en);
  if (n % 2 == 0) {
    T xe = from_int<T>(1), xo = from_int<T>(1), ye = from_int<T>(1), yo = from_int<T>(1);
    for (std::size_t i = 0; i < n; i += 2) {
      xe *= z.x()[i];
      ye *= z.y()[i];
      xo *= z.x()[i + 1];
      yo *= z.y()[i + 1];
    }
    out.emplace_back("O_" + std::to_string(n / 2) + "*", T(xe + xo));
    out.emplace_back("E_" + std::to_string(n / 2) + "*", T(ye + yo));
  }
  return out;
}

}  // namespace pentagram
