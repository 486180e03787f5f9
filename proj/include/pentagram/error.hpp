#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pentagram {

enum class ErrorCode {
  InvalidArgument,
  CoincidentPoints,
  CoincidentLines,
  NotCollinear,
  DegenerateQuadruple,
  DegenerateDiagonals,
  DegenerateConfiguration,
  DegeneratePolygon,
  ConvexityLost,
  SingularPoint,
  ZeroScale,
  ZeroCoordinate,
  ZeroCoefficient,
  DivisibleByThree,
  NoRealSolution,
  NonRationalRoot,
  WeightOutOfRange,
  DimensionMismatch,
  SingularMatrix,
  DegenerateChords,
  StepCapExceeded,
  Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-checkable error code. `where` holds an index
/// (vertex, coordinate, or orbit step) when the failure is localized.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<long long> where = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(message),
        where_(where) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] std::optional<long long> where() const noexcept { return where_; }
  /// Message without the code prefix.
  [[nodiscard]] const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::optional<long long> where_;
};

}  // namespace pentagram
