#pragma once

// Independent reference computations used to cross-check the main
// implementations. They are deliberately naive.

#include <cstddef>
#include <utility>
#include <vector>

#include "pentagram/difference_eq.hpp"
#include "pentagram/invariants.hpp"

namespace pentagram::oracle {

/// Every product of k factors drawn with repetition from the 2n O-type
/// factors, filtered by the consecutivity rules (a repeated factor counts as
/// consecutive with itself), mapped to (sign, exponents) and sorted.
std::vector<std::pair<int, Exponents>> brute_force_admissible(std::size_t n, std::size_t k, Family family);

/// The same data taken from enumerate_admissible, sorted the same way.
std::vector<std::pair<int, Exponents>> sorted_terms(const PolyInvariant& inv);

/// (a,b)-map with the b-part read off literally with factors
/// 1 + a_{i-3k-2} b_{i-3k-1} over 1 + a_{i+3k-2} b_{i+3k-1}.
template <Scalar T>
ABCoords<T> map_ab_literal_b(const ABCoords<T>& c) {
  const long n = static_cast<long>(c.size());
  const long m = n / 3;
  const ABCoords<T> good = map_ab(c);
  std::vector<T> b(c.size());
  for (long i = 0; i < n; ++i) {
    T pb = c.b(i - 1);
    for (long k = 1; k <= m; ++k) {
      const T num = T(from_int<T>(1) + c.a(i - 3 * k - 2) * c.b(i - 3 * k - 1));
      const T den = T(from_int<T>(1) + c.a(i + 3 * k - 2) * c.b(i + 3 * k - 1));
      if (is_zero(den)) throw Error(ErrorCode::SingularPoint, "vanishing factor", i);
      pb *= num / den;
    }
    b[i] = pb;
  }
  return ABCoords<T>(good.a(), std::move(b));
}

/// Central-difference gradient of a polynomial invariant at a float point.
std::vector<double> numeric_gradient(const PolyInvariant& inv, const CornerCoords<double>& z, double h = 1e-6);

/// Central-difference Jacobian of map_xy.
std::vector<std::vector<double>> numeric_map_jacobian(const CornerCoords<double>& z, double h = 1e-6);

}  // namespace pentagram::oracle
