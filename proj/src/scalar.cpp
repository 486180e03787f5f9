#include "pentagram/scalar.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <limits>

#include "pentagram/error.hpp"

namespace pentagram {

namespace {

double initial_tolerance() {
  if (const char* env = std::getenv("PENTAGRAM_EPSILON")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0 && std::isfinite(v)) return v;
  }
  return 1e-12;
}

std::atomic<double>& tolerance_slot() {
  static std::atomic<double> slot{initial_tolerance()};
  return slot;
}

std::optional<mpz_class> integer_root(const mpz_class& v, unsigned k) {
  if (sgn(v) < 0 && k % 2 == 0) return std::nullopt;
  mpz_class magnitude_v = abs(v);
  mpz_class root;
  if (mpz_root(root.get_mpz_t(), magnitude_v.get_mpz_t(), k) == 0) return std::nullopt;
  if (sgn(v) < 0) root = -root;
  return root;
}

}  // namespace

double tolerance() noexcept { return tolerance_slot().load(std::memory_order_relaxed); }

void set_tolerance(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive and finite");
  }
  tolerance_slot().store(eps, std::memory_order_relaxed);
}

std::optional<Rational> real_root(const Rational& v, unsigned k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "zeroth root");
  auto num = integer_root(v.get_num(), k);
  if (!num) return std::nullopt;
  auto den = integer_root(v.get_den(), k);
  if (!den) return std::nullopt;
  Rational r(*num, *den);
  r.canonicalize();
  return r;
}

std::optional<double> real_root(double v, unsigned k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "zeroth root");
  if (v < 0 && k % 2 == 0) return std::nullopt;
  if (k == 3) return std::cbrt(v);
  const double m = std::pow(std::abs(v), 1.0 / k);
  return v < 0 ? -m : m;
}

std::string format_scalar(const Rational& v) {
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string format_scalar(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error(ErrorCode::Parse, "cannot format double");
  return std::string(buf, ptr);
}

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw Error(ErrorCode::Parse, "empty rational");
  const bool decimal = s.find_first_of(".eE") != std::string::npos;
  if (decimal) {
    char* end = nullptr;
    const double d = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(d)) {
      throw Error(ErrorCode::Parse, "bad decimal '" + s + "'");
    }
    return from_double<Rational>(d);
  }
  Rational r;
  if (r.set_str(s, 10) != 0 || sgn(r.get_den()) == 0) {
    throw Error(ErrorCode::Parse, "bad rational '" + s + "'");
  }
  r.canonicalize();
  return r;
}

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::CoincidentLines: return "CoincidentLines";
    case ErrorCode::NotCollinear: return "NotCollinear";
    case ErrorCode::DegenerateQuadruple: return "DegenerateQuadruple";
    case ErrorCode::DegenerateDiagonals: return "DegenerateDiagonals";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::ConvexityLost: return "ConvexityLost";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::ZeroScale: return "ZeroScale";
    case ErrorCode::ZeroCoordinate: return "ZeroCoordinate";
    case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorCode::DivisibleByThree: return "DivisibleByThree";
    case ErrorCode::NoRealSolution: return "NoRealSolution";
    case ErrorCode::NonRationalRoot: return "NonRationalRoot";
    case ErrorCode::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DegenerateChords: return "DegenerateChords";
    case ErrorCode::StepCapExceeded: return "StepCapExceeded";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace pentagram
