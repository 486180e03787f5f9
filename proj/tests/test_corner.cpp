#include "doctest.h"
#include "pentagram/corner.hpp"
#include "pentagram/invariants.hpp"
#include "support.hpp"

using namespace pentagram;
using Q = Rational;

TEST_CASE("uniform point is fixed") {
  const auto z = CornerCoords<Q>::uniform(7, Q(2, 3), Q(-5, 4));
  CHECK(map_xy(z) == z);
}

TEST_CASE("singular point is reported with its index") {
  auto z = testing::random_coords(7, 2);
  std::vector<Q> x = z.x(), y = z.y();
  y[3] = 1 / x[3];
  try {
    (void)map_xy(CornerCoords<Q>(x, y));
    FAIL("expected SingularPoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularPoint);
    CHECK(e.where() == 3);
  }
  std::vector<double> xf(7, 0.5), yf(7, 0.25);
  xf[3] = 2.0;
  yf[3] = 0.5 * (1 + 1e-14);
  CHECK_THROWS_AS(map_xy(CornerCoords<double>(xf, yf)), Error);
}

TEST_CASE("construction guards") {
  CHECK_THROWS_AS(CornerCoords<Q>({Q(1), Q(2), Q(3)}, {Q(1), Q(2)}), Error);
  try {
    (void)CornerCoords<Q>({Q(1), Q(0), Q(3)}, {Q(1), Q(2), Q(4)});
    FAIL("expected ZeroCoordinate");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroCoordinate);
    CHECK(e.where() == 1);
  }
}

TEST_CASE("rescaling") {
  const auto z = testing::random_coords(7, 3);
  CHECK(rescale(z, Q(1)) == z);
  try {
    (void)rescale(z, Q(0));
    FAIL("expected ZeroScale");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroScale);
  }
  const Q t(-7, 3);
  const auto zt = rescale(z, t);
  CHECK(casimirs(zt)[0].second == casimirs(z)[0].second * t * t * t * t * t * t * t);
  CHECK(map_xy(zt) == rescale(map_xy(z), t));
}

TEST_CASE("casimir values for n = 6") {
  const auto z = CornerCoords<Q>({Q(1), Q(2), Q(3), Q(4), Q(5), Q(6)}, {Q(1), Q(1), Q(1), Q(1), Q(1), Q(2)});
  const auto c = casimirs(z);
  REQUIRE(c.size() == 4);
  CHECK(c[0].first == "O_6");
  CHECK(c[0].second == 720);
  CHECK(c[2].first == "O_3*");
  CHECK(c[2].second == 63);
  CHECK(c[3].second == 3);
}

TEST_CASE("casimirs are conserved exactly") {
  for (std::size_t n : {4, 5, 6, 7, 8, 9, 10}) {
    for (std::uint64_t s = 1; s <= 3; ++s) {
      const auto z = testing::random_coords(n, 50 * n + s);
      CHECK(casimirs(map_xy(z)) == casimirs(z));
    }
  }
}

TEST_CASE("cyclic shift search") {
  const auto z = testing::random_coords(7, 4);
  CHECK(find_cyclic_shift(cyclic_shift(z, 3), z) == 3u);
  CHECK_FALSE(find_cyclic_shift(map_xy(z), z).has_value());
}
