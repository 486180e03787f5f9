#include "doctest.h"
#include "pentagram/difference_eq.hpp"
#include "pentagram/invariants.hpp"
#include "pentagram/oracles.hpp"
#include "support.hpp"

using namespace pentagram;
using Q = Rational;

namespace {

Mat3<Q> companion(const Q& a, const Q& b) {
  Mat3<Q> c{};
  for (auto& row : c)
    for (auto& e : row) e = 0;
  c[1][0] = 1;
  c[2][1] = 1;
  c[0][2] = 1;
  c[1][2] = b;
  c[2][2] = a;
  return c;
}

Mat3<Q> power(const Mat3<Q>& m, int k) {
  Mat3<Q> r = identity3<Q>();
  for (int i = 0; i < k; ++i) r = multiply(r, m);
  return r;
}

// Twisted polygon whose monodromy has a rational cube determinant.
TwistedPolygon<Q> cube_det_polygon(std::size_t n, std::uint64_t seed) {
  const auto base = random_twisted_polygon<Q>(n, seed, true);
  const auto g = testing::random_matrix(seed + 77);
  return TwistedPolygon<Q>(base.period(), power(g, 3));
}

}  // namespace

TEST_CASE("zero coefficients give the basis three-cycle") {
  const auto c = ABCoords<Q>::constant(7, Q(0), Q(0));
  const auto m = monodromy_matrix(c);
  // V_{k+3} = V_k and 7 = 1 mod 3: (V_7, V_8, V_9) = (V_1, V_2, V_0)
  Mat3<Q> expected{};
  for (auto& row : expected)
    for (auto& e : row) e = 0;
  expected[1][0] = 1;
  expected[2][1] = 1;
  expected[0][2] = 1;
  CHECK(m == expected);
  CHECK(trace(m) == 0);
  CHECK(determinant(m) == 1);
}

TEST_CASE("constant coefficients give a companion power") {
  for (std::size_t n : {4, 5, 7, 8}) {
    const Q a(2, 3), b(-5, 4);
    const auto m = monodromy_matrix(ABCoords<Q>::constant(n, a, b));
    CHECK(m == power(companion(a, b), static_cast<int>(n)));
    CHECK(determinant(m) == 1);
  }
}

TEST_CASE("monodromy is unimodular") {
  for (std::size_t n : {4, 5, 7, 8, 10}) {
    for (std::uint64_t s = 1; s <= 4; ++s) CHECK(determinant(monodromy_matrix(random_ab<Q>(n, s))) == 1);
  }
}

TEST_CASE("ab_to_polygon and lift_polygon are inverse") {
  for (std::size_t n : {4, 5, 7, 8}) {
    for (std::uint64_t s = 1; s <= 4; ++s) {
      const auto c = random_ab<Q>(n, 10 * n + s);
      CHECK(lift_polygon(ab_to_polygon(c)) == c);
    }
  }
}

TEST_CASE("normalized lifts satisfy the recurrence") {
  for (std::size_t n : {5, 7, 8}) {
    for (std::uint64_t s = 1; s <= 3; ++s) {
      const auto p = cube_det_polygon(n, 40 * n + s);
      const auto lift = normalized_lift(p);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(det3(lift.lifts[i], lift.lifts[i + 1], lift.lifts[i + 2]) == lift.det);
        for (int k = 0; k < 3; ++k) {
          const Q residual = lift.lifts[i + 3][k] - lift.coeffs.a(static_cast<long>(i)) * lift.lifts[i + 2][k] -
                             lift.coeffs.b(static_cast<long>(i)) * lift.lifts[i + 1][k] - lift.lifts[i][k];
          CHECK(residual == 0);
        }
      }
      CHECK(ab_to_xy(lift.coeffs) == corner_invariants(p));
    }
  }
}

TEST_CASE("lifts of difference-equation polygons are unimodular") {
  for (std::size_t n : {4, 5, 7, 8}) {
    const auto lift = normalized_lift(ab_to_polygon(random_ab<Q>(n, 3 * n)));
    CHECK(lift.det == 1);
    for (std::size_t i = 0; i < n; ++i) CHECK(det3(lift.lifts[i], lift.lifts[i + 1], lift.lifts[i + 2]) == 1);
  }
}

TEST_CASE("non-cube monodromy determinant has no rational lift") {
  const auto base = random_twisted_polygon<Q>(7, 3, true);
  Mat3<Q> m = identity3<Q>();
  m[0][0] = 2;
  try {
    (void)lift_polygon(TwistedPolygon<Q>(base.period(), m));
    FAIL("expected NonRationalRoot");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonRationalRoot);
  }
  CHECK_NOTHROW(lift_polygon(TwistedPolygon<double>(
      [&] {
        std::vector<HomPoint<double>> v;
        for (const auto& h : base.period()) v.emplace_back(h[0].get_d(), h[1].get_d(), h[2].get_d());
        return v;
      }(),
      Mat3<double>{{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}})));
}

TEST_CASE("divisible by three is rejected") {
  try {
    (void)ABCoords<Q>::constant(6, Q(1), Q(1));
    FAIL("expected DivisibleByThree");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisibleByThree);
  }
  CHECK_THROWS_AS(xy_to_ab(testing::random_coords(6, 1)), Error);
  CHECK_THROWS_AS(lift_polygon(random_twisted_polygon<Q>(9, 1)), Error);
}

TEST_CASE("ab_to_xy formulas") {
  const Q a(-3, 2), b(7, 5);
  const auto z = ab_to_xy(ABCoords<Q>::constant(5, a, b));
  for (long i = 0; i < 5; ++i) {
    CHECK(z.x(i) == a / (b * b));
    CHECK(z.y(i) == -b / (a * a));
  }
  for (std::size_t n : {4, 5, 7, 8}) {
    const auto c = random_ab<Q>(n, n);
    const auto w = ab_to_xy(c);
    const Q sign = n % 2 == 0 ? 1 : -1;
    CHECK(product_of(w.x()) * product_of(w.y()) == sign / (product_of(c.a()) * product_of(c.b())));
    CHECK(corner_invariants(ab_to_polygon(c)) == w);
  }
  auto bad = random_ab<Q>(5, 2).b();
  bad[3] = 0;
  try {
    (void)ab_to_xy(ABCoords<Q>(random_ab<Q>(5, 2).a(), bad));
    FAIL("expected ZeroCoefficient");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroCoefficient);
    CHECK(e.where() == 3);
  }
}

TEST_CASE("xy_to_ab inverts ab_to_xy") {
  for (std::size_t n : {4, 5, 7, 8, 10, 11}) {
    for (std::uint64_t s = 1; s <= 3; ++s) {
      const auto c = random_ab<Q>(n, 100 * n + s);
      CHECK(xy_to_ab(ab_to_xy(c)) == c);
      const auto cf = random_ab<double>(n, 100 * n + s);
      const auto back = xy_to_ab(ab_to_xy(cf));
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(back.a()[i] == doctest::Approx(cf.a()[i]).epsilon(1e-10));
        CHECK(back.b()[i] == doctest::Approx(cf.b()[i]).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("xy_to_ab on a uniform negative point") {
  // x = a/b^2, y = -b/a^2 with a = -2, b = 3.
  const auto z = CornerCoords<Q>::uniform(7, Q(-2, 9), Q(-3, 4));
  CHECK(xy_to_ab(z) == ABCoords<Q>::constant(7, Q(-2), Q(3)));
}

TEST_CASE("xy_to_ab reports irrational coefficients") {
  const auto z = CornerCoords<Q>::uniform(5, Q(2), Q(3));
  try {
    (void)xy_to_ab(z);
    FAIL("expected NonRationalRoot");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonRationalRoot);
  }
  const auto back = ab_to_xy(xy_to_ab(testing::to_float(z)));
  CHECK(approx_equal(back, testing::to_float(z)));
}

TEST_CASE("map_ab is conjugate to map_xy") {
  for (std::size_t n : {4, 5, 7, 8, 10, 11}) {
    for (std::uint64_t s = 1; s <= 5; ++s) {
      const auto c = random_ab<Q>(n, 7 * n + s);
      CHECK(ab_to_xy(map_ab(c)) == map_xy(ab_to_xy(c)));
    }
  }
}

TEST_CASE("literal reading of the b-update breaks conjugacy") {
  for (std::size_t n : {5, 7}) {
    const auto c = random_ab<Q>(n, 3);
    CHECK_FALSE(ab_to_xy(oracle::map_ab_literal_b(c)) == map_xy(ab_to_xy(c)));
  }
}

TEST_CASE("map_ab singular point") {
  auto a = random_ab<Q>(7, 5).a();
  auto b = random_ab<Q>(7, 5).b();
  a[3] = -1 / b[2];
  try {
    (void)map_ab(ABCoords<Q>(a, b));
    FAIL("expected SingularPoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularPoint);
    CHECK(e.where() == 3);
  }
}

TEST_CASE("monodromy conjugacy class is preserved by map_ab") {
  for (std::size_t n : {4, 5, 7, 8}) {
    const auto c = random_ab<Q>(n, 9 * n);
    const auto before = omega_invariants(monodromy_matrix(c));
    const auto after = omega_invariants(monodromy_matrix(map_ab(c)));
    CHECK(before == after);
  }
}
