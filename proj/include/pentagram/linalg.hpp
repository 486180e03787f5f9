#pragma once

#include <cstddef>
#include <vector>

#include "pentagram/error.hpp"
#include "pentagram/scalar.hpp"

namespace pentagram {

/// Dense row-major matrix over either scalar realization.
template <Scalar T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, from_int<T>(0)) {}

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = from_int<T>(1);
    return m;
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shapes");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& ark = a(r, k);
        if (is_zero(ark)) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += ark * b(k, c);
      }
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix shapes");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  [[nodiscard]] const std::vector<T>& data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <Scalar T>
T max_abs(const Matrix<T>& m) {
  T best = from_int<T>(0);
  for (const auto& e : m.data()) best = std::max(best, magnitude(e));
  return best;
}

/// Rank by Gaussian elimination. Exact in rational mode; float mode uses
/// partial pivoting and treats pivots below tolerance * max|entry| as zero.
template <Scalar T>
std::size_t rank(Matrix<T> m) {
  const T scale = max_abs(m);
  if (is_zero(scale)) return 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    for (std::size_t i = r; i < m.rows(); ++i) {
      if constexpr (is_exact_v<T>) {
        if (!is_zero(m(i, c))) {
          piv = i;
          break;
        }
      } else {
        if (std::abs(m(i, c)) > std::abs(m(piv, c))) piv = i;
      }
    }
    if (negligible(m(piv, c), T(scale * from_int<T>(static_cast<long>(m.cols()))))) continue;
    for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(r, k), m(piv, k));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (is_zero(m(i, c))) continue;
      const T f = T(m(i, c) / m(r, c));
      for (std::size_t k = c; k < m.cols(); ++k) m(i, k) -= f * m(r, k);
    }
    ++r;
  }
  return r;
}

/// Gauss-Jordan inverse; throws SingularMatrix.
template <Scalar T>
Matrix<T> inverse(Matrix<T> m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  const T scale = max_abs(m);
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c; i < n; ++i) {
      if constexpr (is_exact_v<T>) {
        if (!is_zero(m(i, c))) {
          piv = i;
          break;
        }
      } else {
        if (std::abs(m(i, c)) > std::abs(m(piv, c))) piv = i;
      }
    }
    if (is_zero(m(piv, c)) || negligible(m(piv, c), scale)) {
      throw Error(ErrorCode::SingularMatrix, "matrix is singular");
    }
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(m(c, k), m(piv, k));
      std::swap(inv(c, k), inv(piv, k));
    }
    const T p = m(c, c);
    for (std::size_t k = 0; k < n; ++k) {
      m(c, k) /= p;
      inv(c, k) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || is_zero(m(i, c))) continue;
      const T f = m(i, c);
      for (std::size_t k = 0; k < n; ++k) {
        m(i, k) -= f * m(c, k);
        inv(i, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

}  // namespace pentagram
