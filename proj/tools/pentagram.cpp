// pentagram: command-line front end.
//
// Exit codes: 0 success, 1 failed check or drift breach, 2 invalid flags or
// input, 3 ConvexityLost, 4 SingularPoint, 5 DegenerateChords.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pentagram/continuum.hpp"
#include "pentagram/dynamics.hpp"
#include "pentagram/io.hpp"
#include "pentagram/verify.hpp"

using namespace pentagram;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConvexity = 3;
constexpr int kExitSingular = 4;
constexpr int kExitChords = 5;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::Parse:
    case ErrorCode::StepCapExceeded:
    case ErrorCode::DivisibleByThree:
    case ErrorCode::NonRationalRoot:
    case ErrorCode::WeightOutOfRange:
      return kExitUsage;
    case ErrorCode::ConvexityLost: return kExitConvexity;
    case ErrorCode::SingularPoint: return kExitSingular;
    case ErrorCode::DegenerateChords: return kExitChords;
    default: return kExitFailed;
  }
}

std::size_t exact_step_cap() {
  if (const char* env = std::getenv("PENTAGRAM_EXACT_STEP_CAP")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1000;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_atomic(path, content);
  }
}

std::vector<double> parse_ladder(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0' || !(v > 0)) throw Error(ErrorCode::InvalidArgument, "bad eps '" + cell + "'");
    out.push_back(v);
  }
  if (out.size() < 2) throw Error(ErrorCode::InvalidArgument, "eps ladder needs at least two values");
  return out;
}

struct GenerateArgs {
  std::string kind = "uconvex";
  std::size_t n = 0;
  std::string a = "0.5";
  std::string b = "2";
  std::uint64_t seed = 1;
  double perturbation = 0.0;
  std::string mode = "float";
  std::string out;
};

int cmd_generate(const GenerateArgs& g) {
  if (g.n < 4) throw Error(ErrorCode::InvalidArgument, "n must be at least 4");
  json j;
  if (g.kind == "regular") {
    if (g.mode == "exact") throw Error(ErrorCode::InvalidArgument, "regular polygons are float only");
    j = polygon_to_json(regular_polygon(g.n));
  } else if (g.kind == "random-twisted") {
    j = g.mode == "exact" ? polygon_to_json(random_twisted_polygon<Rational>(g.n, g.seed))
                          : polygon_to_json(random_twisted_polygon<double>(g.n, g.seed));
  } else {
    GeneratorOptions opts;
    opts.perturbation = g.perturbation;
    if (g.mode == "exact") {
      const auto p = generate_universally_convex_exact(g.n, parse_rational(g.a), parse_rational(g.b), g.seed, opts);
      j = polygon_to_json(p.base);
    } else {
      const auto p = generate_universally_convex(g.n, parse_rational(g.a).get_d(), parse_rational(g.b).get_d(), g.seed,
                                                 opts);
      j = polygon_to_json(p.base);
    }
  }
  emit(g.out, j.dump(2) + "\n");
  return 0;
}

std::vector<std::string> tracked_names(std::size_t n) {
  std::vector<std::string> out;
  for (const auto& t : tracked_invariants(n)) out.push_back(t.name);
  return out;
}

struct IterateArgs {
  std::string in;
  std::size_t steps = 100;
  std::size_t log_every = 1;
  std::string mode = "float";
  std::string out;
  double drift_budget = 1e-9;
};

template <Scalar T>
CornerCoords<T> load_start(const std::string& path) {
  const json j = json::parse(read_file(path));
  if (j.contains("vertices")) return corner_invariants(polygon_from_json<T>(j));
  if (j.contains("x")) return coords_from_json<T>(j);
  throw Error(ErrorCode::Parse, "input is neither a polygon nor a coordinates file");
}

int iterate_float(const IterateArgs& a) {
  const CornerCoords<double> z0 = load_start<double>(a.in);
  std::string csv = orbit_csv_header(z0.size(), tracked_names(z0.size()));
  OrbitOptions opts;
  opts.steps = a.steps;
  opts.log_every = a.log_every;
  opts.keep_records = false;
  opts.on_record = [&](const OrbitRecord& r) { csv += orbit_csv_row(r); };
  const Orbit orbit = iterate_orbit(z0, opts);
  emit(a.out, csv);
  const RecurrenceReport rep = recurrence_diagnostics(orbit);
  std::cerr << "steps=" << a.steps << " max_drift=" << format_scalar(orbit.max_drift)
            << " min_return=" << format_scalar(rep.minima.empty() ? 0.0 : rep.minima.back().second)
            << " verdict=" << to_string(rep.verdict) << "\n";
  if (orbit.max_drift > a.drift_budget) {
    std::cerr << "invariant drift " << format_scalar(orbit.max_drift) << " exceeds budget "
              << format_scalar(a.drift_budget) << "\n";
    return kExitFailed;
  }
  return 0;
}

int iterate_exact(const IterateArgs& a) {
  const std::size_t cap = exact_step_cap();
  if (a.steps > cap) {
    throw Error(ErrorCode::StepCapExceeded,
                "exact mode is capped at " + std::to_string(cap) + " steps (PENTAGRAM_EXACT_STEP_CAP)");
  }
  const CornerCoords<Rational> z0 = load_start<Rational>(a.in);
  const std::size_t n = z0.size();
  const auto invs = monodromy_invariants(n);
  const auto cas = casimir_polynomials(n);
  std::vector<std::string> names;
  for (const auto& inv : invs) names.push_back(inv.name());
  for (const auto& [name, p] : cas) names.push_back(name);
  auto values = [&](const CornerCoords<Rational>& z) {
    std::vector<Rational> v;
    for (const auto& inv : invs) v.push_back(eval_invariant(inv, z));
    for (const auto& [name, p] : cas) v.push_back(p.eval(z.flat()));
    return v;
  };
  const std::vector<Rational> v0 = values(z0);
  std::vector<double> log0;
  for (const auto& e : z0.flat()) log0.push_back(std::log(std::abs(e.get_d())));

  std::string csv = "step";
  for (std::size_t i = 0; i < n; ++i) csv += ",x_" + std::to_string(i);
  for (std::size_t i = 0; i < n; ++i) csv += ",y_" + std::to_string(i);
  for (const auto& nm : names) csv += "," + nm;
  csv += ",drift,dist\n";

  bool drifted = false;
  CornerCoords<Rational> z = z0;
  for (std::size_t k = 0; k <= a.steps; ++k) {
    if (k > 0) {
      try {
        z = map_xy(z);
      } catch (const Error& e) {
        throw Error(e.code(), e.message() + " at step " + std::to_string(k), static_cast<long long>(k));
      }
    }
    if (a.log_every == 0 || (k % a.log_every != 0 && k != a.steps)) continue;
    const auto v = values(z);
    bool same = v == v0;
    drifted = drifted || !same;
    std::vector<double> lg;
    for (const auto& e : z.flat()) lg.push_back(std::log(std::abs(e.get_d())));
    csv += std::to_string(k);
    for (const auto& e : z.flat()) csv += "," + format_scalar(e);
    for (const auto& e : v) csv += "," + format_scalar(e);
    csv += std::string(",") + (same ? "0" : "1") + "," + format_scalar(recurrence_distance(lg, log0, n)) + "\n";
  }
  emit(a.out, csv);
  std::cerr << "steps=" << a.steps << " max_drift=" << (drifted ? "nonzero" : "0") << "\n";
  return drifted ? kExitFailed : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pentagram map on twisted polygons: generation, iteration, verification, continuum limit"};
  app.require_subcommand(1);
  double epsilon = 0.0;
  app.add_option("--epsilon", epsilon, "float tolerance (overrides PENTAGRAM_EPSILON)");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "write a polygon JSON file");
  g->add_option("--kind", gen.kind, "uconvex | regular | random-twisted")
      ->check(CLI::IsMember({"uconvex", "regular", "random-twisted"}));
  g->add_option("--n", gen.n, "number of vertices per period")->required();
  g->add_option("--a", gen.a, "monodromy eigenvalue a, 0 < a < 1");
  g->add_option("--b", gen.b, "monodromy eigenvalue b > 1");
  g->add_option("--seed", gen.seed, "random seed");
  g->add_option("--perturbation", gen.perturbation, "relative vertex jitter for uconvex");
  g->add_option("--mode", gen.mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  g->add_option("--out", gen.out, "output file (default stdout)");

  IterateArgs it;
  auto* i = app.add_subcommand("iterate", "iterate the map and write an orbit CSV");
  i->add_option("--in", it.in, "polygon or coordinates JSON")->required()->check(CLI::ExistingFile);
  i->add_option("--steps", it.steps, "number of steps");
  i->add_option("--log-every", it.log_every, "row interval");
  i->add_option("--mode", it.mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  i->add_option("--out", it.out, "output CSV (default stdout)");
  i->add_option("--drift-budget", it.drift_budget, "maximum relative invariant drift");

  std::vector<std::size_t> ver_ns;
  VerifyOptions ver;
  std::string ver_mode = "exact", ver_out;
  auto* v = app.add_subcommand("verify", "run the lemma suite and write a JSON report");
  v->add_option("--n", ver_ns, "polygon sizes")->required()->delimiter(',');
  v->add_option("--trials", ver.trials, "random points per size");
  v->add_option("--mode", ver_mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  v->add_option("--seed", ver.seed, "random seed");
  v->add_option("--out", ver_out, "output JSON (default stdout)");

  std::string curve = "circle", curve_file, eps_text = "0.2,0.1,0.05,0.025", csv_out, svg_out;
  std::size_t samples = 2048;
  double ea = 1.5, eb = 1.0;
  auto* e = app.add_subcommand("envelope", "chord-envelope map and its expansion order");
  e->add_option("--curve", curve, "circle | ellipse | oval | line | file")
      ->check(CLI::IsMember({"circle", "ellipse", "oval", "line", "file"}));
  e->add_option("--file", curve_file, "curve CSV (parameter,x,y) for --curve file");
  e->add_option("--samples", samples, "number of samples");
  e->add_option("--eps", eps_text, "comma-separated eps ladder");
  e->add_option("--a", ea, "ellipse semi-axis along x");
  e->add_option("--b", eb, "ellipse semi-axis along y");
  e->add_option("--csv", csv_out, "CSV of the envelope at the largest eps");
  e->add_option("--svg", svg_out, "SVG of the curve and its envelopes");

  std::size_t inv_n = 0, inv_k = 0;
  std::string inv_out;
  auto* inv = app.add_subcommand("invariants", "dump the monodromy invariants as JSON");
  inv->add_option("--n", inv_n, "polygon size")->required();
  inv->add_option("--k", inv_k, "single weight (default all)");
  inv->add_option("--out", inv_out, "output JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kExitUsage;
  }

  try {
    if (epsilon > 0) set_tolerance(epsilon);
    if (*g) return cmd_generate(gen);
    if (*i) return it.mode == "exact" ? iterate_exact(it) : iterate_float(it);
    if (*v) {
      ver.ns = ver_ns;
      ver.exact = ver_mode == "exact";
      const auto results = run_verify(ver);
      emit(ver_out, verify_report(ver, results).dump(2) + "\n");
      bool ok = true;
      for (const auto& r : results) ok = ok && r.pass;
      return ok ? 0 : kExitFailed;
    }
    if (*e) {
      const std::vector<double> ladder = parse_ladder(eps_text);
      SampledCurve c = curve == "circle"    ? circle_curve(samples)
                       : curve == "ellipse" ? ellipse_curve(samples, ea, eb)
                       : curve == "oval"    ? oval_curve(samples)
                       : curve == "line"    ? line_curve(samples)
                                            : curve_from_csv(read_file(curve_file));
      const ExpansionReport rep = expansion_order_check(c, ladder);
      json pts = json::array();
      for (const auto& p : rep.points) pts.push_back({{"eps", p.eps}, {"displacement", p.displacement}});
      json out{{"curve", curve},     {"samples", c.size()},           {"points", pts},
               {"exponent", rep.exponent}, {"fit_residual", rep.fit_residual}, {"warning", rep.warning}};
      if (rep.warning) out["warning_reason"] = rep.warning_reason;
      std::cout << out.dump(2) << "\n";
      if (!csv_out.empty()) emit(csv_out, curve_to_csv(envelope_map(c, ladder.front())));
      if (!svg_out.empty()) {
        std::vector<SampledCurve> envs;
        for (double eps : ladder) envs.push_back(envelope_map(c, eps));
        std::vector<const SampledCurve*> all{&c};
        std::vector<std::string> colors{"black"};
        const char* palette[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400"};
        for (std::size_t k = 0; k < envs.size(); ++k) {
          all.push_back(&envs[k]);
          colors.emplace_back(palette[k % 5]);
        }
        emit(svg_out, curves_to_svg(all, colors));
      }
      return 0;
    }
    if (*inv) {
      if (inv_n < 3) throw Error(ErrorCode::InvalidArgument, "n must be at least 3");
      json list = json::array();
      for (std::size_t k = 1; k <= inv_n / 2; ++k) {
        if (inv_k != 0 && k != inv_k) continue;
        list.push_back(invariant_to_json(enumerate_admissible(inv_n, k, Family::O)));
        list.push_back(invariant_to_json(enumerate_admissible(inv_n, k, Family::E)));
      }
      if (inv_k != 0 && list.empty()) (void)enumerate_admissible(inv_n, inv_k, Family::O);
      emit(inv_out, json{{"n", inv_n}, {"invariants", list}}.dump(2) + "\n");
      return 0;
    }
  } catch (const Error& ex) {
    std::cerr << ex.what() << "\n";
    return exit_code_for(ex);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
