#include "pentagram/oracles.hpp"

#include <algorithm>
#include <map>

namespace pentagram::oracle {

namespace {

// Factor f in [0, 2n): f < n is the triple at index f, otherwise the single
// at index f - n.
bool clash(std::size_t f, std::size_t g, std::size_t n) {
  const bool ft = f < n, gt = g < n;
  const long i = static_cast<long>(ft ? f : f - n);
  const long j = static_cast<long>(gt ? g : g - n);
  const long ln = static_cast<long>(n);
  auto same = [&](long p, long q) { return ((p - q) % ln + ln) % ln == 0; };
  std::vector<long> offsets;
  if (ft && gt) {
    offsets = {-2, -1, 0, 1, 2};
    for (long o : offsets)
      if (same(j, i + o)) return true;
    return false;
  }
  if (!ft && !gt) {
    offsets = {-1, 0, 1};
    for (long o : offsets)
      if (same(j, i + o)) return true;
    return false;
  }
  const long t = ft ? i : j, s = ft ? j : i;
  offsets = {-1, 0, 1, 2};
  for (long o : offsets)
    if (same(s, t + o)) return true;
  return false;
}

}  // namespace

std::vector<std::pair<int, Exponents>> brute_force_admissible(std::size_t n, std::size_t k, Family family) {
  const std::size_t factors = 2 * n;
  std::vector<std::pair<int, Exponents>> out;
  std::vector<std::size_t> pick(k, 0);
  // Odometer over non-decreasing k-tuples (multisets).
  while (true) {
    bool ok = true;
    for (std::size_t a = 0; a < k && ok; ++a)
      for (std::size_t b = a + 1; b < k && ok; ++b)
        if (clash(pick[a], pick[b], n)) ok = false;
    if (ok) {
      std::map<std::uint32_t, std::uint32_t> ex;
      int singles = 0;
      for (std::size_t f : pick) {
        const auto un = static_cast<std::uint32_t>(n);
        if (f < n) {
          const auto i = static_cast<std::uint32_t>(f);
          if (family == Family::O) {
            ++ex[i];
            ++ex[un + i];
            ++ex[(i + 1) % un];
          } else {
            ++ex[un + i];
            ++ex[(i + 1) % un];
            ++ex[un + (i + 1) % un];
          }
        } else {
          const auto j = static_cast<std::uint32_t>(f - n);
          ++ex[family == Family::O ? j : un + j];
          ++singles;
        }
      }
      out.emplace_back(singles % 2 == 0 ? 1 : -1, Exponents(ex.begin(), ex.end()));
    }
    // Advance.
    std::size_t pos = k;
    while (pos > 0 && pick[pos - 1] == factors - 1) --pos;
    if (pos == 0) break;
    ++pick[pos - 1];
    for (std::size_t q = pos; q < k; ++q) pick[q] = pick[pos - 1];
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.second < r.second; });
  return out;
}

std::vector<std::pair<int, Exponents>> sorted_terms(const PolyInvariant& inv) {
  std::vector<std::pair<int, Exponents>> out;
  for (const auto& t : inv.terms) out.emplace_back(t.sign, t.exponents);
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.second < r.second; });
  return out;
}

std::vector<double> numeric_gradient(const PolyInvariant& inv, const CornerCoords<double>& z, double h) {
  std::vector<double> f = z.flat();
  std::vector<double> g(f.size());
  for (std::size_t s = 0; s < f.size(); ++s) {
    const double step = h * std::max(1.0, std::abs(f[s]));
    std::vector<double> up = f, dn = f;
    up[s] += step;
    dn[s] -= step;
    g[s] = (eval_invariant(inv, CornerCoords<double>::from_flat(up)) -
            eval_invariant(inv, CornerCoords<double>::from_flat(dn))) /
           (2 * step);
  }
  return g;
}

std::vector<std::vector<double>> numeric_map_jacobian(const CornerCoords<double>& z, double h) {
  const std::vector<double> f = z.flat();
  std::vector<std::vector<double>> j(f.size(), std::vector<double>(f.size()));
  for (std::size_t s = 0; s < f.size(); ++s) {
    const double step = h * std::max(1.0, std::abs(f[s]));
    std::vector<double> up = f, dn = f;
    up[s] += step;
    dn[s] -= step;
    const auto fu = map_xy(CornerCoords<double>::from_flat(up)).flat();
    const auto fd = map_xy(CornerCoords<double>::from_flat(dn)).flat();
    for (std::size_t r = 0; r < f.size(); ++r) j[r][s] = (fu[r] - fd[r]) / (2 * step);
  }
  return j;
}

}  // namespace pentagram::oracle
