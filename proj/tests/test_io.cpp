#include <filesystem>

#include "doctest.h"
#include "pentagram/io.hpp"
#include "pentagram/verify.hpp"
#include "support.hpp"

using namespace pentagram;
using Q = Rational;

TEST_CASE("rational scalars round-trip as strings") {
  CHECK(scalar_to_json(Q(-7, 3)) == "-7/3");
  CHECK(scalar_from_json<Q>(json("-7/3")) == Q(-7, 3));
  CHECK(scalar_from_json<Q>(json(5)) == 5);
  CHECK(scalar_from_json<double>(json("1/4")) == 0.25);
  CHECK_THROWS_AS(scalar_from_json<Q>(json("1/0")), Error);
  CHECK_THROWS_AS(scalar_from_json<Q>(json::array()), Error);
}

TEST_CASE("polygon JSON round-trip") {
  const auto p = random_twisted_polygon<Q>(7, 4);
  const auto j = polygon_to_json(p);
  CHECK(j["mode"] == "exact");
  CHECK(j["n"] == 7);
  const auto back = polygon_from_json<Q>(json::parse(j.dump()));
  CHECK(corner_invariants(back) == corner_invariants(p));
  CHECK(back.monodromy() == p.monodromy());

  const auto f = regular_polygon(5);
  const auto fb = polygon_from_json<double>(json::parse(polygon_to_json(f).dump()));
  CHECK(approx_equal(corner_invariants(fb), corner_invariants(f)));
}

TEST_CASE("polygon JSON errors") {
  CHECK_THROWS_AS(polygon_from_json<Q>(json::parse(R"({"n": 4})")), Error);
  CHECK_THROWS_AS(polygon_from_json<Q>(json::parse(R"({"n": 5, "vertices": [[0,0,1],[1,0,1],[1,1,1],[0,1,1]]})")),
                  Error);
  try {
    (void)polygon_from_json<Q>(json::parse(R"({"vertices": [[0,0],[1,0,1],[1,1,1],[0,1,1]]})"));
    FAIL("expected Parse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
  }
}

TEST_CASE("coordinate and ab JSON") {
  const auto z = testing::random_coords(5, 2);
  CHECK(coords_from_json<Q>(json::parse(coords_to_json(z).dump())) == z);
  const auto c = random_ab<Q>(5, 2);
  const auto j = ab_to_json(c);
  CHECK(j["a"].size() == 5);
  CHECK(scalar_from_json<Q>(j["b"][2]) == c.b()[2]);
}

TEST_CASE("invariant JSON") {
  const auto j = invariant_to_json(enumerate_admissible(5, 1, Family::O));
  CHECK(j["name"] == "O_1");
  CHECK(j["term_count"] == 10);
  CHECK(j["terms"][0]["factors"][0] == "X_0");
  CHECK(j["terms"][0]["monomial"] == "x_0*x_1*y_0");
  const auto e = invariant_to_json(enumerate_admissible(5, 1, Family::E));
  CHECK(e["terms"][0]["factors"][0] == "Y_0");
}

TEST_CASE("orbit CSV schema") {
  const auto header = orbit_csv_header(3, {"O_1", "E_1"});
  CHECK(header == "step,x_0,x_1,x_2,y_0,y_1,y_2,O_1,E_1,drift,dist\n");
}

TEST_CASE("curve CSV round-trip and SVG") {
  const auto c = circle_curve(64);
  const auto back = curve_from_csv(curve_to_csv(c));
  REQUIRE(back.size() == 64);
  CHECK(back.period() == doctest::Approx(c.period()));
  CHECK(back.samples()[10][0] == doctest::Approx(c.samples()[10][0]));
  CHECK_THROWS_AS(curve_from_csv("t,x,y\n0,1,0\n0.5,0,1\n0.7,-1,0\n"), Error);
  const auto e = envelope_map(c, 0.3);
  const auto svg = curves_to_svg({&c, &e}, {"black", "red"});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("red") != std::string::npos);
}

TEST_CASE("atomic writes") {
  const auto dir = std::filesystem::temp_directory_path() / "pentagram_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.txt";
  write_atomic(path, "first");
  write_atomic(path, "second");
  CHECK(read_file(path) == "second");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& ent : std::filesystem::directory_iterator(dir)) ++entries;
  CHECK(entries == 1);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(read_file(dir / "missing"), Error);
}

TEST_CASE("verify suite") {
  VerifyOptions opts;
  opts.ns = {6, 8};
  opts.trials = 1;
  const auto results = run_verify(opts);
  bool saw_skip = false, saw_corank = false;
  for (const auto& r : results) {
    if (r.n == 6 && r.skipped) {
      saw_skip = true;
      CHECK(r.reason == "n divisible by 3");
    }
    if (r.n == 8 && r.name == "corank") {
      saw_corank = true;
      REQUIRE(r.value.has_value());
      CHECK(*r.value == 4);
    }
    if (!r.skipped) CHECK_MESSAGE(r.pass, r.name << " n=" << r.n);
  }
  CHECK(saw_skip);
  CHECK(saw_corank);
  CHECK(verify_report(opts, results).dump() == verify_report(opts, run_verify(opts)).dump());
  CHECK(point_hash("abc").size() == 16);
}
