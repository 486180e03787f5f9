#include "pentagram/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pentagram {

double TrackedInvariant::value(const std::vector<double>& z) const {
  double acc = 0.0;
  for (const auto& [sign, e] : terms) acc += sign * monomial_value(e, z);
  return acc;
}

double TrackedInvariant::magnitude(const std::vector<double>& z) const {
  double acc = 0.0;
  for (const auto& [sign, e] : terms) acc += std::abs(monomial_value(e, z));
  return acc;
}

std::vector<TrackedInvariant> tracked_invariants(std::size_t n) {
  std::vector<TrackedInvariant> out;
  for (const auto& inv : monodromy_invariants(n)) {
    TrackedInvariant t{inv.name(), {}};
    for (const auto& term : inv.terms) t.terms.emplace_back(term.sign, term.exponents);
    out.push_back(std::move(t));
  }
  for (const auto& [name, poly] : casimir_polynomials(n)) {
    TrackedInvariant t{name, {}};
    for (const auto& [e, c] : poly.terms()) t.terms.emplace_back(static_cast<int>(c.get_si()), e);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<double> log_magnitudes(const CornerCoords<double>& z) {
  std::vector<double> out = z.flat();
  for (double& v : out) v = std::log(std::abs(v));
  return out;
}

double recurrence_distance(const std::vector<double>& log_a, const std::vector<double>& log_b, std::size_t n) {
  if (log_a.size() != 2 * n || log_b.size() != 2 * n) {
    throw Error(ErrorCode::DimensionMismatch, "log vectors must have length 2n");
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < n; ++s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n && acc < best; ++i) {
      const std::size_t j = (i + s) % n;
      const double dx = log_a[j] - log_b[i];
      const double dy = log_a[n + j] - log_b[n + i];
      acc += dx * dx + dy * dy;
    }
    best = std::min(best, acc);
  }
  return std::sqrt(best);
}

namespace {

bool is_casimir_name(const std::string& name, std::size_t n) {
  return name == "O_" + std::to_string(n) || name == "E_" + std::to_string(n) || name.back() == '*';
}

std::vector<int> sign_pattern(const CornerCoords<double>& z) {
  std::vector<int> s;
  for (double v : z.flat()) s.push_back(v > 0 ? 1 : -1);
  return s;
}

}  // namespace

Orbit iterate_orbit(const CornerCoords<double>& z0, const OrbitOptions& opts) {
  const std::size_t n = z0.size();
  const auto tracked = tracked_invariants(n);
  Orbit orbit;
  for (const auto& t : tracked) orbit.invariant_names.push_back(t.name);

  const std::vector<double> f0 = z0.flat();
  std::vector<double> v0, scale0;
  std::vector<bool> casimir;
  for (const auto& t : tracked) {
    v0.push_back(t.value(f0));
    const double m = t.magnitude(f0);
    scale0.push_back(m > 0 ? m : 1.0);
    casimir.push_back(is_casimir_name(t.name, n));
  }
  const std::vector<double> log0 = log_magnitudes(z0);
  const std::vector<int> signs0 = sign_pattern(z0);

  orbit.distance.reserve(opts.steps + 1);
  orbit.step_size.reserve(opts.steps + 1);
  orbit.distance.push_back(0.0);
  orbit.step_size.push_back(0.0);
  for (double l : log0) orbit.max_log_sup = std::max(orbit.max_log_sup, std::abs(l));

  auto emit = [&](std::size_t step, const CornerCoords<double>& z) {
    const std::vector<double> f = z.flat();
    OrbitRecord rec{step, z, {}, 0.0, orbit.distance[step]};
    for (std::size_t i = 0; i < tracked.size(); ++i) {
      const double v = tracked[i].value(f);
      const double d = std::abs(v - v0[i]) / scale0[i];
      rec.invariants.push_back(v);
      rec.drift = std::max(rec.drift, d);
      if (casimir[i]) orbit.max_casimir_drift = std::max(orbit.max_casimir_drift, d);
    }
    orbit.max_drift = std::max(orbit.max_drift, rec.drift);
    if (opts.on_record) opts.on_record(rec);
    if (opts.keep_records) orbit.records.push_back(std::move(rec));
  };

  if (opts.log_every != 0) emit(0, z0);
  CornerCoords<double> z = z0;
  std::vector<double> prev = log0;
  for (std::size_t k = 1; k <= opts.steps; ++k) {
    try {
      z = map_xy(z);
    } catch (const Error& e) {
      const std::string where = e.where() ? " (index " + std::to_string(*e.where()) + ")" : "";
      throw Error(e.code(), e.message() + where + " at step " + std::to_string(k),
                  static_cast<long long>(k));
    }
    std::vector<double> cur = log_magnitudes(z);
    for (double l : cur) {
      if (!std::isfinite(l)) throw Error(ErrorCode::SingularPoint, "orbit left the chart", static_cast<long long>(k));
      orbit.max_log_sup = std::max(orbit.max_log_sup, std::abs(l));
    }
    if (orbit.sign_pattern_kept && sign_pattern(z) != signs0) orbit.sign_pattern_kept = false;
    orbit.distance.push_back(recurrence_distance(cur, log0, n));
    orbit.step_size.push_back(recurrence_distance(cur, prev, n));
    prev = std::move(cur);
    if (opts.log_every != 0 && (k % opts.log_every == 0 || k == opts.steps)) emit(k, z);
  }
  orbit.last = z;
  return orbit;
}

std::string_view to_string(Recurrence r) {
  switch (r) {
    case Recurrence::Periodic: return "periodic";
    case Recurrence::QuasiPeriodic: return "quasi-periodic";
    case Recurrence::Convergent: return "convergent";
    case Recurrence::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

RecurrenceReport recurrence_diagnostics(const std::vector<double>& distance, const std::vector<double>& step_size,
                                        const RecurrenceOptions& opts) {
  RecurrenceReport rep;
  if (distance.size() < 2) return rep;
  const std::size_t steps = distance.size() - 1;

  for (std::size_t k = 1; k <= steps; ++k) {
    if (distance[k] <= opts.period_tolerance) {
      rep.period = k;
      break;
    }
  }
  std::vector<std::size_t> ladder = opts.ladder;
  for (auto& K : ladder) K = std::min(K, steps);
  ladder.push_back(steps);
  std::sort(ladder.begin(), ladder.end());
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
  ladder.erase(std::remove(ladder.begin(), ladder.end(), std::size_t{0}), ladder.end());

  double running = std::numeric_limits<double>::infinity();
  std::size_t next = 0;
  for (std::size_t k = 1; k <= steps; ++k) {
    running = std::min(running, distance[k]);
    rep.diameter = std::max(rep.diameter, distance[k]);
    if (distance[k] < opts.near_threshold && (k == 1 || distance[k - 1] >= opts.near_threshold)) ++rep.near_returns;
    while (next < ladder.size() && ladder[next] == k) {
      rep.minima.emplace_back(k, running);
      ++next;
    }
  }
  if (step_size.size() == distance.size()) {
    const std::size_t from = steps - std::max<std::size_t>(1, steps / 10) + 1;
    for (std::size_t k = from; k <= steps; ++k) rep.tail_step = std::max(rep.tail_step, step_size[k]);
  }

  const double m_last = rep.minima.back().second;
  const double m_first = rep.minima.front().second;
  if (rep.period) {
    rep.verdict = Recurrence::Periodic;
  } else if (step_size.size() == distance.size() && rep.tail_step <= opts.convergence_tolerance) {
    rep.verdict = Recurrence::Convergent;
  } else if (m_last < opts.near_threshold && m_last < m_first &&
             rep.diameter >= opts.min_diameter_factor * opts.near_threshold) {
    rep.verdict = Recurrence::QuasiPeriodic;
  } else {
    rep.verdict = Recurrence::Inconclusive;
  }
  return rep;
}

ConfinementReport level_set_confinement(const Orbit& orbit, const ConfinementOptions& opts) {
  ConfinementReport r{};
  r.max_log_sup = orbit.max_log_sup;
  r.casimir_drift = orbit.max_casimir_drift;
  r.bounded = std::isfinite(orbit.max_log_sup) && orbit.max_log_sup <= opts.log_bound && orbit.sign_pattern_kept;
  r.casimirs_constant = orbit.max_casimir_drift <= opts.drift_budget;
  r.confined = r.bounded && r.casimirs_constant;
  return r;
}

TorusControl torus_translation(const std::vector<double>& rotation, std::size_t steps) {
  TorusControl out;
  out.distance.reserve(steps + 1);
  out.step_size.reserve(steps + 1);
  out.distance.push_back(0.0);
  out.step_size.push_back(0.0);
  double step = 0.0;
  for (double w : rotation) {
    const double c = 2.0 * std::sin(std::numbers::pi * (w - std::round(w)));
    step += c * c;
  }
  step = std::sqrt(step);
  for (std::size_t k = 1; k <= steps; ++k) {
    double acc = 0.0;
    for (double w : rotation) {
      // Reduce k*w mod 1 in long double to keep small returns resolvable.
      const long double t = static_cast<long double>(k) * static_cast<long double>(w);
      const double frac = static_cast<double>(t - std::round(t));
      const double c = 2.0 * std::sin(std::numbers::pi * frac);
      acc += c * c;
    }
    out.distance.push_back(std::sqrt(acc));
    out.step_size.push_back(step);
  }
  return out;
}

}  // namespace pentagram
