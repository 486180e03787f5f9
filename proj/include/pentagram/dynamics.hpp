#pragma once

// Float-mode orbits of map_xy and the statistics used as evidence of
// quasi-periodic motion. The recurrence metric is the Euclidean distance
// between log|z| vectors, minimized over the n cyclic relabelings.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pentagram/corner.hpp"
#include "pentagram/invariants.hpp"

namespace pentagram {

/// A ±1-coefficient polynomial in the tracked set, evaluated on flat points.
struct TrackedInvariant {
  std::string name;
  std::vector<std::pair<int, Exponents>> terms;

  [[nodiscard]] double value(const std::vector<double>& z) const;
  [[nodiscard]] double magnitude(const std::vector<double>& z) const;
};

/// O_1.., E_1.., then the Casimirs.
std::vector<TrackedInvariant> tracked_invariants(std::size_t n);

struct OrbitRecord {
  std::size_t step;
  CornerCoords<double> z;
  std::vector<double> invariants;
  double drift;     // max relative deviation from step 0 over all invariants
  double distance;  // to z_0 in the recurrence metric
};

struct OrbitOptions {
  std::size_t steps = 1000;
  /// Snapshots (and invariant evaluations) every this many steps; 0 disables.
  std::size_t log_every = 1;
  bool keep_records = true;
  std::function<void(const OrbitRecord&)> on_record;
};

struct Orbit {
  std::vector<std::string> invariant_names;
  std::vector<OrbitRecord> records;
  std::vector<double> distance;   // distance[k] = d(z_k, z_0), k = 0..steps
  std::vector<double> step_size;  // step_size[k] = d(z_k, z_{k-1}), step_size[0] = 0
  double max_drift = 0.0;
  double max_casimir_drift = 0.0;
  double max_log_sup = 0.0;  // sup over steps and coordinates of |log|z||
  bool sign_pattern_kept = true;
  std::optional<CornerCoords<double>> last;
};

/// Shift-quotient distance between log-magnitude vectors.
double recurrence_distance(const std::vector<double>& log_a, const std::vector<double>& log_b, std::size_t n);

std::vector<double> log_magnitudes(const CornerCoords<double>& z);

/// Iterates map_xy; a SingularPoint is rethrown carrying the step index.
Orbit iterate_orbit(const CornerCoords<double>& z0, const OrbitOptions& opts);

enum class Recurrence { Periodic, QuasiPeriodic, Convergent, Inconclusive };

std::string_view to_string(Recurrence r);

struct RecurrenceOptions {
  /// K values at which m(K) is reported; values above the orbit length are
  /// clipped to it.
  std::vector<std::size_t> ladder{10, 100, 1000, 10000, 100000};
  /// A return closer than this is treated as an exact period.
  double period_tolerance = 1e-9;
  /// Threshold defining a near-return.
  double near_threshold = 1e-3;
  /// Step sizes below this over the tail mean convergence to a fixed point.
  double convergence_tolerance = 1e-9;
  /// The orbit must wander at least this many thresholds away from z_0.
  double min_diameter_factor = 5.0;
};

struct RecurrenceReport {
  std::vector<std::pair<std::size_t, double>> minima;  // (K, m(K))
  std::optional<std::size_t> period;
  std::size_t near_returns = 0;  // separate entries into the threshold ball
  double diameter = 0.0;         // max_k d(z_k, z_0)
  double tail_step = 0.0;        // max step size over the last tenth
  Recurrence verdict = Recurrence::Inconclusive;
};

/// distance[k] = d(z_k, z_0); step_size as in Orbit (may be empty).
RecurrenceReport recurrence_diagnostics(const std::vector<double>& distance, const std::vector<double>& step_size,
                                        const RecurrenceOptions& opts = {});

inline RecurrenceReport recurrence_diagnostics(const Orbit& orbit, const RecurrenceOptions& opts = {}) {
  return recurrence_diagnostics(orbit.distance, orbit.step_size, opts);
}

struct ConfinementOptions {
  double log_bound = 20.0;
  double drift_budget = 1e-9;
};

struct ConfinementReport {
  double max_log_sup;
  double casimir_drift;
  bool bounded;
  bool casimirs_constant;
  bool confined;
};

ConfinementReport level_set_confinement(const Orbit& orbit, const ConfinementOptions& opts = {});

struct TorusControl {
  std::vector<double> distance;
  std::vector<double> step_size;
};

/// Translation by `rotation` (in turns) on a product of unit circles embedded
/// in R^{2d}; distances are Euclidean in the embedding.
TorusControl torus_translation(const std::vector<double>& rotation, std::size_t steps);

}  // namespace pentagram
