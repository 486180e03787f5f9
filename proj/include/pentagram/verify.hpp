#pragma once

// The lemma suite run by `pentagram verify`: every named check at random
// points, in exact or float arithmetic.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pentagram/io.hpp"

namespace pentagram {

struct CheckResult {
  std::string name;
  std::size_t n = 0;
  std::size_t trial = 0;
  std::string point_hash;
  double residual = 0.0;
  bool pass = false;
  std::optional<long> value;
  bool skipped = false;
  std::string reason;
};

struct VerifyOptions {
  std::vector<std::size_t> ns{7};
  std::size_t trials = 3;
  bool exact = true;
  std::uint64_t seed = 1;
  /// Relative tolerance for float-mode residuals.
  double float_tolerance = 1e-8;
  bool parallel = true;
};

std::vector<CheckResult> run_verify(const VerifyOptions& opts);

json verify_report(const VerifyOptions& opts, const std::vector<CheckResult>& results);

/// FNV-1a over the canonical text of a point.
std::string point_hash(const std::string& canonical);

template <Scalar T>
std::string canonical_text(const CornerCoords<T>& z) {
  std::string s;
  for (const auto& v : z.flat()) s += format_scalar(v) + ";";
  return s;
}

}  // namespace pentagram
