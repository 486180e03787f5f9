#include "pentagram/difference_eq.hpp"

#include <map>
#include <mutex>

namespace pentagram {

Matrix<Rational> ab_exponent_matrix(std::size_t n) {
  Matrix<Rational> m(2 * n, 2 * n);
  const long ln = static_cast<long>(n);
  for (long i = 0; i < ln; ++i) {
    const std::size_t r = static_cast<std::size_t>(i);
    m(r, wrap(i - 2, n)) += 1;
    m(r, n + wrap(i - 2, n)) -= 1;
    m(r, n + wrap(i - 1, n)) -= 1;
    m(n + r, n + wrap(i - 1, n)) += 1;
    m(n + r, wrap(i - 2, n)) -= 1;
    m(n + r, wrap(i - 1, n)) -= 1;
  }
  return m;
}

ExponentInverse ab_exponent_inverse(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, ExponentInverse> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  require_not_divisible_by_three(n);
  const Matrix<Rational> inv = inverse(ab_exponent_matrix(n));
  mpz_class q = 1;
  for (const auto& e : inv.data()) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), e.get_den().get_mpz_t());
  ExponentInverse out{q.get_si(), std::vector<std::vector<long>>(2 * n, std::vector<long>(2 * n))};
  for (std::size_t r = 0; r < 2 * n; ++r)
    for (std::size_t c = 0; c < 2 * n; ++c) {
      const Rational v = inv(r, c) * Rational(q);
      out.e[r][c] = v.get_num().get_si();
    }
  std::lock_guard lock(mu);
  cache.emplace(n, out);
  return out;
}

}  // namespace pentagram
