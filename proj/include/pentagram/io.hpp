#pragma once

// File formats.
//   polygon JSON: {"n", "mode": "exact"|"float", "vertices": [[p,q,r]...],
//                  "monodromy": [[...],[...],[...]]}; exact scalars are
//                  "num/den" strings, float scalars are numbers.
//   coords JSON:  {"n", "mode", "x": [...], "y": [...]}
//   ab JSON:      {"n", "mode", "a": [...], "b": [...]}
//   orbit CSV:    step, x_0..x_{n-1}, y_0..y_{n-1}, <invariants>, drift, dist
//   curve CSV:    parameter, x, y

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "pentagram/continuum.hpp"
#include "pentagram/corner.hpp"
#include "pentagram/difference_eq.hpp"
#include "pentagram/dynamics.hpp"
#include "pentagram/invariants.hpp"
#include "pentagram/polygon.hpp"

namespace pentagram {

using json = nlohmann::ordered_json;

/// Write to a sibling temporary and rename over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

template <Scalar T>
json scalar_to_json(const T& v) {
  if constexpr (is_exact_v<T>) {
    return format_scalar(v);
  } else {
    return v;
  }
}

/// Accepts "p/q" strings, integers and numbers in either mode.
template <Scalar T>
T scalar_from_json(const json& j) {
  if (j.is_string()) {
    const Rational r = parse_rational(j.get<std::string>());
    if constexpr (is_exact_v<T>) {
      return r;
    } else {
      return r.get_d();
    }
  }
  if (j.is_number_integer()) return from_int<T>(j.get<long>());
  if (j.is_number()) return from_double<T>(j.get<double>());
  throw Error(ErrorCode::Parse, "expected a number or a rational string");
}

template <Scalar T>
std::string mode_name() {
  return is_exact_v<T> ? "exact" : "float";
}

template <Scalar T>
json polygon_to_json(const TwistedPolygon<T>& p) {
  json verts = json::array();
  for (const auto& v : p.period()) {
    verts.push_back({scalar_to_json(v[0]), scalar_to_json(v[1]), scalar_to_json(v[2])});
  }
  json mono = json::array();
  for (const auto& row : p.monodromy()) mono.push_back({scalar_to_json(row[0]), scalar_to_json(row[1]), scalar_to_json(row[2])});
  return {{"n", p.size()}, {"mode", mode_name<T>()}, {"vertices", verts}, {"monodromy", mono}};
}

template <Scalar T>
TwistedPolygon<T> polygon_from_json(const json& j) {
  try {
    const auto& jv = j.at("vertices");
    std::vector<HomPoint<T>> verts;
    for (const auto& v : jv) {
      if (v.size() != 3) throw Error(ErrorCode::Parse, "vertex must have 3 coordinates");
      verts.emplace_back(scalar_from_json<T>(v[0]), scalar_from_json<T>(v[1]), scalar_from_json<T>(v[2]));
    }
    if (j.contains("n") && j.at("n").get<std::size_t>() != verts.size()) {
      throw Error(ErrorCode::Parse, "n does not match the vertex count");
    }
    Mat3<T> m = identity3<T>();
    if (j.contains("monodromy")) {
      const auto& jm = j.at("monodromy");
      if (jm.size() != 3) throw Error(ErrorCode::Parse, "monodromy must be 3x3");
      for (int r = 0; r < 3; ++r) {
        if (jm[r].size() != 3) throw Error(ErrorCode::Parse, "monodromy must be 3x3");
        for (int c = 0; c < 3; ++c) m[r][c] = scalar_from_json<T>(jm[r][c]);
      }
    }
    return TwistedPolygon<T>(std::move(verts), m);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

template <Scalar T>
json coords_to_json(const CornerCoords<T>& z) {
  json x = json::array(), y = json::array();
  for (const auto& v : z.x()) x.push_back(scalar_to_json(v));
  for (const auto& v : z.y()) y.push_back(scalar_to_json(v));
  return {{"n", z.size()}, {"mode", mode_name<T>()}, {"x", x}, {"y", y}};
}

template <Scalar T>
CornerCoords<T> coords_from_json(const json& j) {
  try {
    std::vector<T> x, y;
    for (const auto& v : j.at("x")) x.push_back(scalar_from_json<T>(v));
    for (const auto& v : j.at("y")) y.push_back(scalar_from_json<T>(v));
    return CornerCoords<T>(std::move(x), std::move(y));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

template <Scalar T>
json ab_to_json(const ABCoords<T>& c) {
  json a = json::array(), b = json::array();
  for (const auto& v : c.a()) a.push_back(scalar_to_json(v));
  for (const auto& v : c.b()) b.push_back(scalar_to_json(v));
  return {{"n", c.size()}, {"mode", mode_name<T>()}, {"a", a}, {"b", b}};
}

/// Term list with factor names (X_i, x_j or Y_i, y_j) and the expanded
/// monomial, in enumeration order.
json invariant_to_json(const PolyInvariant& inv);

/// Header row of the orbit CSV.
std::string orbit_csv_header(std::size_t n, const std::vector<std::string>& invariant_names);
std::string orbit_csv_row(const OrbitRecord& rec);

std::string curve_to_csv(const SampledCurve& c);
/// Closed curve from its CSV; the period is the parameter span plus one step.
SampledCurve curve_from_csv(const std::string& text);

/// Polylines of each curve (closed unless twisted), scaled to fit.
std::string curves_to_svg(const std::vector<const SampledCurve*>& curves, const std::vector<std::string>& colors);

}  // namespace pentagram
