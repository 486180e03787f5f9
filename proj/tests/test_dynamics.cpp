#include <cmath>

#include "doctest.h"
#include "pentagram/dynamics.hpp"
#include "support.hpp"

using namespace pentagram;
using Q = Rational;

namespace {

CornerCoords<double> convex_coords(std::size_t n, std::uint64_t seed) {
  return testing::to_float(corner_invariants(testing::random_convex_polygon(n, seed)));
}

OrbitOptions quiet(std::size_t steps) {
  OrbitOptions o;
  o.steps = steps;
  o.keep_records = false;
  return o;
}

}  // namespace

TEST_CASE("pentagon orbits have period one up to relabeling") {
  const auto orbit = iterate_orbit(convex_coords(5, 3), quiet(10));
  REQUIRE(orbit.distance.size() == 11);
  // Rounding moves the point off the closed locus, where it is amplified a
  // few-fold per step.
  for (std::size_t k = 1; k <= 4; ++k) CHECK(orbit.distance[k] < 1e-11);
  CHECK(recurrence_diagnostics(orbit).period == 1u);
  CHECK(level_set_confinement(orbit).confined);
}

TEST_CASE("hexagon orbits have period two up to relabeling") {
  const auto orbit = iterate_orbit(convex_coords(6, 4), quiet(10));
  CHECK(orbit.distance[1] > 1e-6);
  CHECK(orbit.distance[2] < 1e-10);
  const auto rep = recurrence_diagnostics(orbit);
  CHECK(rep.period == 2u);
  CHECK(rep.verdict == Recurrence::Periodic);
}

TEST_CASE("records carry invariants and drift") {
  GeneratorOptions g;
  g.perturbation = 2e-5;
  const auto z0 = corner_invariants(generate_universally_convex(7, 0.5, 2.0, 1, g).base);
  OrbitOptions o;
  o.steps = 100;
  o.log_every = 25;
  std::size_t seen = 0;
  o.on_record = [&](const OrbitRecord&) { ++seen; };
  const auto orbit = iterate_orbit(z0, o);
  CHECK(seen == 5);
  REQUIRE(orbit.records.size() == 5);
  CHECK(orbit.records.front().step == 0);
  CHECK(orbit.records.back().step == 100);
  CHECK(orbit.invariant_names.size() == tracked_invariants(7).size());
  CHECK(orbit.records.back().invariants.size() == orbit.invariant_names.size());
  CHECK(orbit.records.front().drift == 0.0);
  CHECK(orbit.max_drift < 1e-12);
  CHECK(orbit.last.has_value());
  CHECK(orbit.sign_pattern_kept);
}

TEST_CASE("universally convex heptagon conserves its invariants") {
  GeneratorOptions g;
  g.perturbation = 2e-5;
  const auto z0 = corner_invariants(generate_universally_convex(7, 0.5, 2.0, 5, g).base);
  const auto orbit = iterate_orbit(z0, quiet(20000));
  CHECK(orbit.max_drift < 1e-9);
  const auto conf = level_set_confinement(orbit);
  CHECK(conf.bounded);
  CHECK(conf.casimirs_constant);
  const auto rep = recurrence_diagnostics(orbit);
  CHECK_FALSE(rep.period.has_value());
  CHECK(rep.verdict != Recurrence::Convergent);
  for (std::size_t i = 1; i < rep.minima.size(); ++i) CHECK(rep.minima[i].second <= rep.minima[i - 1].second);
}

TEST_CASE("singular orbit reports the step") {
  const auto z = CornerCoords<double>({2.0, 1.0 / 3, 0.2, 1.0 / 7, 3.0}, {0.5, 2.0 / 9, 0.25, 5.0, 2.0 / 7});
  try {
    (void)iterate_orbit(z, quiet(5));
    FAIL("expected SingularPoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularPoint);
    CHECK(e.where() == 1);
  }
}

TEST_CASE("generic twisted gons are reported, not asserted") {
  std::size_t confined = 0, escaped = 0, singular = 0;
  for (std::uint64_t s = 1; s <= 6; ++s) {
    const auto z = testing::to_float(testing::random_coords(7, s));
    try {
      const auto orbit = iterate_orbit(z, quiet(2000));
      (level_set_confinement(orbit).confined ? confined : escaped) += 1;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SingularPoint);
      ++singular;
    }
  }
  CHECK(confined + escaped + singular == 6);
}

TEST_CASE("recurrence distance quotients by cyclic shifts") {
  const std::vector<double> a{1, 2, 3, 4, 10, 20, 30, 40};
  const std::vector<double> b{2, 3, 4, 1, 20, 30, 40, 10};
  CHECK(recurrence_distance(a, b, 4) == 0.0);
  const std::vector<double> c{2, 3, 4, 1, 10, 20, 30, 40};
  CHECK(recurrence_distance(a, c, 4) > 0.0);
}

TEST_CASE("synthetic controls") {
  const auto golden = torus_translation({(std::sqrt(5.0) - 1) / 2}, 100000);
  const auto q = recurrence_diagnostics(golden.distance, golden.step_size);
  CHECK(q.verdict == Recurrence::QuasiPeriodic);
  CHECK_FALSE(q.period.has_value());
  CHECK(q.near_returns > 1);

  const auto periodic = torus_translation({1.0 / 7, 2.0 / 5}, 1000);
  const auto p = recurrence_diagnostics(periodic.distance, periodic.step_size);
  CHECK(p.verdict == Recurrence::Periodic);
  CHECK(p.period == 35u);

  std::vector<double> dist(2001, 0.5), step(2001, 0.0);
  dist[0] = 0.0;
  const auto c = recurrence_diagnostics(dist, step);
  CHECK(c.verdict == Recurrence::Convergent);
  CHECK(to_string(c.verdict) == "convergent");
}

TEST_CASE("a recurrence that stays close is inconclusive") {
  // Never leaves the threshold ball, so no return can be told apart.
  std::vector<double> dist(1001), step(1001, 1e-6);
  for (std::size_t k = 0; k < dist.size(); ++k) dist[k] = 1e-4 + 1e-6 * std::sin(0.1 * static_cast<double>(k));
  dist[0] = 0.0;
  CHECK(recurrence_diagnostics(dist, step).verdict == Recurrence::Inconclusive);
}
