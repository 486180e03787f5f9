#include "pentagram/poisson.hpp"

#include <algorithm>

namespace pentagram {

namespace {

PoissonStructure empty_structure(std::string name, std::size_t n) {
  return {std::move(name), n, std::vector<std::vector<int>>(2 * n, std::vector<int>(2 * n, 0))};
}

void add_pair(PoissonStructure& s, std::size_t a, std::size_t b, int w) {
  s.omega[a][b] += w;
  s.omega[b][a] -= w;
}

}  // namespace

PoissonStructure xy_structure(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "n must be at least 3");
  PoissonStructure s = empty_structure("xy", n);
  const long ln = static_cast<long>(n);
  for (long i = 0; i < ln; ++i) {
    const std::size_t ii = wrap(i, n), jj = wrap(i + 1, n);
    add_pair(s, ii, jj, -1);
    add_pair(s, n + ii, n + jj, +1);
  }
  return s;
}

PoissonStructure ab_structure(std::size_t n) {
  require_not_divisible_by_three(n);
  PoissonStructure s = empty_structure("ab", n);
  const long ln = static_cast<long>(n);
  const long m = ln / 3;
  for (long i = 0; i < ln; ++i) {
    for (long j = 0; j < ln; ++j) {
      int w = 0;
      for (long k = 1; k <= m; ++k) {
        if (wrap(i, n) == wrap(j + 3 * k, n)) ++w;
        if (wrap(i, n) == wrap(j - 3 * k, n)) --w;
      }
      s.omega[i][j] += w;
      s.omega[n + i][n + j] -= w;
    }
  }
  return s;
}

Polynomial bracket(const Polynomial& f, const Polynomial& g, const PoissonStructure& s) {
  if (f.nvars() != s.dim() || g.nvars() != s.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "polynomial does not match the structure");
  }
  Polynomial out(s.dim());
  for (const auto& [ef, cf] : f.terms()) {
    for (const auto& [eg, cg] : g.terms()) {
      long w = 0;
      for (const auto& [a, pa] : ef)
        for (const auto& [b, pb] : eg) w += static_cast<long>(s.omega[a][b]) * pa * pb;
      if (w == 0) continue;
      Exponents e = ef;
      e.insert(e.end(), eg.begin(), eg.end());
      std::sort(e.begin(), e.end());
      Exponents merged;
      for (const auto& [slot, p] : e) {
        if (!merged.empty() && merged.back().first == slot) {
          merged.back().second += p;
        } else {
          merged.emplace_back(slot, p);
        }
      }
      out.add_term(merged, cf * cg * w);
    }
  }
  return out;
}

Polynomial jacobiator(const Polynomial& f, const Polynomial& g, const Polynomial& h, const PoissonStructure& s) {
  return bracket(bracket(f, g, s), h, s) + bracket(bracket(g, h, s), f, s) + bracket(bracket(h, f, s), g, s);
}

}  // namespace pentagram
