#include "pentagram/invariants.hpp"

#include <algorithm>

namespace pentagram {

namespace {

std::uint32_t cyc(long d, std::size_t n) { return static_cast<std::uint32_t>(wrap(d, n)); }

void normalize(Exponents& e) {
  std::sort(e.begin(), e.end());
  Exponents out;
  for (const auto& [s, p] : e) {
    if (!out.empty() && out.back().first == s) {
      out.back().second += p;
    } else {
      out.emplace_back(s, p);
    }
  }
  e = std::move(out);
}

}  // namespace

bool factors_consecutive(const Factor& f, const Factor& g, std::size_t n) {
  using K = Factor::Kind;
  const long fi = f.index, gi = g.index;
  const std::uint32_t m = static_cast<std::uint32_t>(n);
  if (f.kind == K::Triple && g.kind == K::Triple) {
    const std::uint32_t d = cyc(gi - fi, n);
    return d <= 2 || d >= m - 2;
  }
  if (f.kind == K::Single && g.kind == K::Single) {
    const std::uint32_t d = cyc(gi - fi, n);
    return d <= 1 || d == m - 1;
  }
  const long triple = f.kind == K::Triple ? fi : gi;
  const long single = f.kind == K::Triple ? gi : fi;
  const std::uint32_t d = cyc(single - triple, n);
  return d <= 2 || d == m - 1;
}

Exponents factor_exponents(const std::vector<Factor>& factors, std::size_t n) {
  Exponents e;
  for (const auto& f : factors) {
    const auto i = f.index;
    if (f.kind == Factor::Kind::Triple) {
      e.emplace_back(i, 1);
      e.emplace_back(static_cast<std::uint32_t>(n) + i, 1);
      e.emplace_back(cyc(static_cast<long>(i) + 1, n), 1);
    } else {
      e.emplace_back(i, 1);
    }
  }
  normalize(e);
  return e;
}

PolyInvariant enumerate_admissible(std::size_t n, std::size_t k, Family family) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "n must be at least 3");
  if (k < 1 || k > n / 2) {
    throw Error(ErrorCode::WeightOutOfRange,
                "weight " + std::to_string(k) + " outside [1, " + std::to_string(n / 2) + "]");
  }
  std::vector<Factor> pool;
  for (std::uint32_t i = 0; i < n; ++i) {
    pool.push_back({Factor::Kind::Triple, i});
    pool.push_back({Factor::Kind::Single, i});
  }
  PolyInvariant out{n, k, Family::O, {}};
  std::vector<Factor> chosen;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (chosen.size() == k) {
      long t = 0;
      for (const auto& f : chosen) t += f.kind == Factor::Kind::Single;
      out.terms.push_back({t % 2 == 0 ? 1 : -1, chosen, factor_exponents(chosen, n)});
      return;
    }
    for (std::size_t p = start; p < pool.size(); ++p) {
      if (pool.size() - p < k - chosen.size()) break;
      bool ok = true;
      for (const auto& c : chosen) {
        if (factors_consecutive(c, pool[p], n)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen.push_back(pool[p]);
      self(self, p + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return family == Family::O ? out : to_e_family(out);
}

PolyInvariant to_e_family(const PolyInvariant& o) {
  if (o.family != Family::O) throw Error(ErrorCode::InvalidArgument, "relabeling expects an O-type invariant");
  const auto n = static_cast<std::uint32_t>(o.n);
  PolyInvariant e{o.n, o.k, Family::E, {}};
  e.terms.reserve(o.terms.size());
  for (const auto& t : o.terms) {
    Exponents ex;
    for (const auto& [slot, p] : t.exponents) {
      const std::uint32_t image = slot < n ? n + slot : (slot - n + 1) % n;
      ex.emplace_back(image, p);
    }
    normalize(ex);
    e.terms.push_back({t.sign, t.factors, std::move(ex)});
  }
  return e;
}

std::vector<PolyInvariant> monodromy_invariants(std::size_t n) {
  std::vector<PolyInvariant> out;
  for (std::size_t k = 1; k <= n / 2; ++k) out.push_back(enumerate_admissible(n, k, Family::O));
  for (std::size_t k = 1; k <= n / 2; ++k) out.push_back(enumerate_admissible(n, k, Family::E));
  return out;
}

Polynomial Polynomial::from_invariant(const PolyInvariant& inv) {
  Polynomial p(2 * inv.n);
  for (const auto& t : inv.terms) p.add_term(t.exponents, mpz_class(t.sign));
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::uint32_t slot) {
  return monomial(nvars, Exponents{{slot, 1}});
}

Polynomial Polynomial::monomial(std::size_t nvars, const Exponents& e, long coeff) {
  Polynomial p(nvars);
  p.add_term(e, mpz_class(coeff));
  return p;
}

void Polynomial::add_term(const Exponents& e, const mpz_class& c) {
  if (sgn(c) == 0) return;
  for (const auto& [slot, pw] : e) {
    if (slot >= nvars_) throw Error(ErrorCode::DimensionMismatch, "slot out of range");
    (void)pw;
  }
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.nvars_ != nvars_) throw Error(ErrorCode::DimensionMismatch, "polynomial arity");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw Error(ErrorCode::DimensionMismatch, "polynomial arity");
  Polynomial out(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e = ea;
      e.insert(e.end(), eb.begin(), eb.end());
      normalize(e);
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

std::vector<std::pair<std::string, Polynomial>> casimir_polynomials(std::size_t n) {
  const auto un = static_cast<std::uint32_t>(n);
  const std::size_t nv = 2 * n;
  Exponents ox, ey;
  for (std::uint32_t i = 0; i < un; ++i) {
    ox.emplace_back(i, 1);
    ey.emplace_back(un + i, 1);
  }
  std::vector<std::pair<std::string, Polynomial>> out;
  out.emplace_back("O_" + std::to_string(n), Polynomial::monomial(nv, ox));
  out.emplace_back("E_" + std::to_string(n), Polynomial::monomial(nv, ey));
  if (n % 2 == 0) {
    Polynomial oh(nv), eh(nv);
    for (std::uint32_t parity = 0; parity < 2; ++parity) {
      Exponents xe, ye;
      for (std::uint32_t i = parity; i < un; i += 2) {
        xe.emplace_back(i, 1);
        ye.emplace_back(un + i, 1);
      }
      oh.add_term(xe, 1);
      eh.add_term(ye, 1);
    }
    out.emplace_back("O_" + std::to_string(n / 2) + "*", oh);
    out.emplace_back("E_" + std::to_string(n / 2) + "*", eh);
  }
  return out;
}

}  // namespace pentagram
