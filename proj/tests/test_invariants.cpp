#include <set>

#include "doctest.h"
#include "pentagram/difference_eq.hpp"
#include "pentagram/invariants.hpp"
#include "pentagram/oracles.hpp"
#include "pentagram/poisson.hpp"
#include "support.hpp"

using namespace pentagram;
using Q = Rational;

namespace {

Exponents single_x(std::uint32_t j) { return {{j, 1}}; }

}  // namespace

TEST_CASE("weight-one invariants") {
  for (std::size_t n : {5, 7}) {
    const auto o1 = enumerate_admissible(n, 1, Family::O);
    REQUIRE(o1.terms.size() == 2 * n);
    std::size_t plus = 0, minus = 0;
    for (const auto& t : o1.terms) {
      REQUIRE(t.factors.size() == 1);
      if (t.factors[0].kind == Factor::Kind::Triple) {
        CHECK(t.sign == 1);
        const auto i = t.factors[0].index;
        const auto j = static_cast<std::uint32_t>((i + 1) % n);
        Exponents e{{i, 1}, {j, 1}, {static_cast<std::uint32_t>(n + i), 1}};
        std::sort(e.begin(), e.end());
        CHECK(t.exponents == e);
        ++plus;
      } else {
        CHECK(t.sign == -1);
        CHECK(t.exponents == single_x(t.factors[0].index));
        ++minus;
      }
    }
    CHECK(plus == n);
    CHECK(minus == n);
  }
}

TEST_CASE("term counts match the brute-force oracle") {
  const auto e2 = enumerate_admissible(7, 2, Family::O);
  const auto e3 = enumerate_admissible(7, 3, Family::O);
  CHECK(e2.terms.size() == oracle::brute_force_admissible(7, 2, Family::O).size());
  CHECK(e3.terms.size() == oracle::brute_force_admissible(7, 3, Family::O).size());
  CHECK(e2.terms.size() > 0);
  CHECK(e3.terms.size() > 0);
}

TEST_CASE("enumeration is complete for n up to 10") {
  for (std::size_t n = 3; n <= 10; ++n) {
    for (std::size_t k = 1; k <= n / 2; ++k) {
      for (Family f : {Family::O, Family::E}) {
        CHECK(oracle::sorted_terms(enumerate_admissible(n, k, f)) == oracle::brute_force_admissible(n, k, f));
      }
    }
  }
}

TEST_CASE("consecutivity rules") {
  using K = Factor::Kind;
  const std::size_t n = 9;
  auto X = [](std::uint32_t i) { return Factor{K::Triple, i}; };
  auto x = [](std::uint32_t i) { return Factor{K::Single, i}; };
  CHECK(factors_consecutive(X(3), X(5), n));
  CHECK(factors_consecutive(X(3), X(1), n));
  CHECK_FALSE(factors_consecutive(X(3), X(6), n));
  CHECK(factors_consecutive(X(3), x(2), n));
  CHECK(factors_consecutive(X(3), x(5), n));
  CHECK_FALSE(factors_consecutive(X(3), x(6), n));
  CHECK_FALSE(factors_consecutive(X(3), x(1), n));
  CHECK(factors_consecutive(x(8), x(0), n));
  CHECK_FALSE(factors_consecutive(x(2), x(4), n));
  CHECK(factors_consecutive(X(8), X(1), n));
}

TEST_CASE("signs and weights of every term") {
  for (std::size_t n : {6, 7, 8}) {
    for (std::size_t k = 1; k <= n / 2; ++k) {
      const auto inv = enumerate_admissible(n, k, Family::O);
      for (const auto& t : inv.terms) {
        CHECK(t.factors.size() == k);
        std::size_t singles = 0;
        for (const auto& f : t.factors) singles += f.kind == Factor::Kind::Single;
        CHECK(t.sign == (singles % 2 == 0 ? 1 : -1));
      }
    }
  }
}

TEST_CASE("enumeration order is canonical") {
  const auto a = enumerate_admissible(8, 3, Family::O);
  const auto b = enumerate_admissible(8, 3, Family::O);
  REQUIRE(a.terms.size() == b.terms.size());
  for (std::size_t i = 0; i < a.terms.size(); ++i) CHECK(a.terms[i].exponents == b.terms[i].exponents);
  auto key = [](const SignedMonomial& t) {
    std::vector<std::pair<std::uint32_t, int>> k;
    for (const auto& f : t.factors) k.emplace_back(f.index, f.kind == Factor::Kind::Single);
    return k;
  };
  for (std::size_t i = 1; i < a.terms.size(); ++i) CHECK(key(a.terms[i - 1]) < key(a.terms[i]));
}

TEST_CASE("E family is the relabeled O family") {
  const auto o = enumerate_admissible(7, 2, Family::O);
  const auto e = to_e_family(o);
  CHECK(e.family == Family::E);
  CHECK(e.terms.size() == o.terms.size());
  const auto z = testing::random_coords(7, 8);
  // Swapping x_j -> y_j, y_j -> x_{j+1} on the point swaps the values.
  std::vector<Q> x(7), y(7);
  for (long j = 0; j < 7; ++j) {
    x[j] = z.y(j - 1);
    y[j] = z.x(j);
  }
  CHECK(eval_invariant(o, CornerCoords<Q>(x, y)) == eval_invariant(e, z));
}

TEST_CASE("weight range") {
  try {
    (void)enumerate_admissible(7, 4, Family::O);
    FAIL("expected WeightOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WeightOutOfRange);
  }
  CHECK_THROWS_AS(enumerate_admissible(7, 0, Family::E), Error);
  try {
    (void)eval_invariant(enumerate_admissible(7, 1, Family::O), testing::random_coords(8, 1));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("O_1 at a uniform point") {
  const Q x(3, 7), y(-2, 5);
  for (std::size_t n : {5, 8}) {
    const auto z = CornerCoords<Q>::uniform(n, x, y);
    const auto o1 = enumerate_admissible(n, 1, Family::O);
    CHECK(eval_invariant(o1, z) == Q(static_cast<long>(n)) * (x * x * y - x));
    const auto g = gradient_invariant(o1, z);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(g[j] == 2 * x * y - 1);
      CHECK(g[n + j] == x * x);
    }
  }
}

TEST_CASE("invariants are conserved and graded") {
  for (std::size_t n = 4; n <= 10; ++n) {
    const auto z = testing::random_coords(n, 13 * n);
    const auto tz = map_xy(z);
    const Q t(-3, 2);
    const auto rz = rescale(z, t);
    for (const auto& inv : monodromy_invariants(n)) {
      const Q v = eval_invariant(inv, z);
      CHECK(eval_invariant(inv, tz) == v);
      Q w = 1;
      for (std::size_t r = 0; r < inv.k; ++r) w *= t;
      CHECK(eval_invariant(inv, rz) == (inv.family == Family::O ? Q(w * v) : Q(v / w)));
    }
  }
}

TEST_CASE("gradient of O_n") {
  const auto z = testing::random_coords(7, 21);
  const auto cas = casimir_polynomials(7);
  const auto g = gradient_polynomial(cas[0].second, z.flat());
  const Q on = product_of(z.x());
  for (std::size_t j = 0; j < 7; ++j) {
    CHECK(g[j] == on / z.x()[j]);
    CHECK(g[7 + j] == 0);
  }
}

TEST_CASE("exact gradients agree with finite differences") {
  for (std::size_t n : {5, 8}) {
    const auto z = testing::to_float(testing::random_coords(n, 5 * n));
    for (const auto& inv : monodromy_invariants(n)) {
      const auto exact = gradient_invariant(inv, z);
      const auto approx = oracle::numeric_gradient(inv, z);
      double scale = 0.0;
      for (double v : exact) scale = std::max(scale, std::abs(v));
      for (std::size_t i = 0; i < exact.size(); ++i) CHECK(std::abs(exact[i] - approx[i]) <= 1e-6 * scale);
    }
  }
}

TEST_CASE("omega invariants") {
  const auto id = omega_invariants(identity3<Q>());
  CHECK(id.first == 27);
  CHECK(id.second == 27);
  const auto cyc = monodromy_matrix(ABCoords<Q>::constant(7, Q(0), Q(0)));
  CHECK(omega_invariants(cyc).first == 0);
  const auto m = monodromy_matrix(random_ab<Q>(5, 4));
  const auto g = testing::random_matrix(17);
  CHECK(omega_invariants(scaled(m, Q(-5, 3))) == omega_invariants(m));
  CHECK(omega_invariants(multiply(multiply(g, m), inverse(g))) == omega_invariants(m));
  Mat3<Q> sing = identity3<Q>();
  sing[2][2] = 0;
  try {
    (void)omega_invariants(sing);
    FAIL("expected SingularMatrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularMatrix);
  }
}

TEST_CASE("trace identities through the monodromy matrix") {
  for (std::size_t n : {4, 5, 7, 8}) {
    for (std::uint64_t s = 1; s <= 3; ++s) {
      const auto c = random_ab<Q>(n, 17 * n + s);
      const auto r = trace_identities(ab_to_xy(c), monodromy_matrix(c));
      // Cubic form: O_n^2 E_n Ω2 = (1 + ΣO_k)^3 and O_n E_n^2 Ω1 = (1 + ΣE_k)^3.
      CHECK(r.cubic_residual1 == 0);
      CHECK(r.cubic_residual2 == 0);
      // The unexpanded linear form does not hold.
      CHECK(r.literal_residual1 != 0);
      CHECK(r.literal_residual2 != 0);
    }
  }
}

TEST_CASE("even-n half weight contains the alternating products") {
  for (std::size_t n : {4, 6, 8}) {
    const auto inv = enumerate_admissible(n, n / 2, Family::O);
    std::set<Exponents> singles;
    for (const auto& t : inv.terms) {
      bool all_single = true;
      for (const auto& f : t.factors) all_single = all_single && f.kind == Factor::Kind::Single;
      if (!all_single) continue;
      CHECK(t.sign == ((n / 2) % 2 == 0 ? 1 : -1));
      singles.insert(t.exponents);
    }
    Exponents even, odd;
    for (std::uint32_t i = 0; i < n; i += 2) {
      even.push_back({i, 1});
      odd.push_back({i + 1, 1});
    }
    CHECK(singles == std::set<Exponents>{even, odd});
  }
}

TEST_CASE("invariants are algebraically independent at random points") {
  for (std::size_t n : {5, 6, 7, 8}) {
    CHECK(independence_rank(testing::random_coords(n, 3 * n)) == 2 * (n / 2));
  }
}

TEST_CASE("polynomial arithmetic") {
  const auto x0 = Polynomial::variable(4, 0), y0 = Polynomial::variable(4, 2);
  const auto p = x0 * y0 + x0;
  CHECK(p.terms().size() == 2);
  const std::vector<Q> z{Q(2), Q(3), Q(5), Q(7)};
  CHECK(p.eval(z) == 12);
  CHECK((p + Polynomial::monomial(4, {{0, 1}}, -1)) == x0 * y0);
  CHECK(Polynomial::from_invariant(enumerate_admissible(5, 1, Family::O)).eval(testing::random_coords(5, 1).flat()) ==
        eval_invariant(enumerate_admissible(5, 1, Family::O), testing::random_coords(5, 1)));
}
