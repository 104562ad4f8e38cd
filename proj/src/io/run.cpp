#include "fkdv/io/run.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "fkdv/experiments.hpp"
#include "fkdv/io/csv.hpp"
#include "fkdv/io/svg.hpp"
#include "fkdv/simd/kernels.hpp"

#ifndef FKDV_VERSION
#define FKDV_VERSION "unknown"
#endif
#ifndef FKDV_GIT_REVISION
#define FKDV_GIT_REVISION "unknown"
#endif

namespace fkdv::io {
namespace {

SolverConfig solver_from(const RunConfig& c) {
  SolverConfig s;
  if (c.has("dt")) {
    s.dt_policy = FixedStep{c.real("dt")};
  } else {
    s.dt_policy = CflStep{c.real("cfl_safety")};
  }
  s.breaking_slope_factor = c.real("breaking_slope_factor");
  s.tail_fraction_limit = c.real("tail_fraction_limit");
  s.max_steps = static_cast<std::size_t>(c.integer("max_steps"));
  if (c.has("dealias")) s.dealias = c.boolean("dealias");
  if (c.has("detect_breaking")) s.detect_breaking = c.boolean("detect_breaking");
  return s;
}

burgers::InitialDatum datum_from(const RunConfig& c) {
  const std::string& name = c.text("datum");
  if (name == "gaussian_derivative") return burgers::InitialDatum::gaussian_derivative(c.real("amplitude"));
  return burgers::InitialDatum::negative_sine(c.real("amplitude"));
}

std::vector<int> to_ints(const std::vector<long>& v) { return {v.begin(), v.end()}; }

ExperimentReport dispatch(const RunConfig& c) {
  const std::string& cmd = c.command;
  const unsigned workers = c.workers;
  if (cmd == "simulate") {
    SimulateParams p;
    p.alpha = c.real("alpha");
    p.dispersion = c.text("dispersion");
    p.depth = c.real("depth");
    p.dispersion_scale = c.real("dispersion_scale");
    p.num_modes = static_cast<std::size_t>(c.integer("N"));
    p.period = c.real("period");
    p.t_end = c.real("t_end");
    p.datum = c.text("datum");
    p.amplitude = c.real("amplitude");
    p.mode = static_cast<int>(c.integer("mode"));
    p.solver = solver_from(c);
    p.observers = c.strings("observers");
    p.sobolev_s = c.reals("sobolev_s");
    p.record_stride = static_cast<std::size_t>(c.integer("record_stride"));
    p.drift_tolerance_mass = c.real("drift_tolerance_mass");
    p.drift_tolerance_momentum = c.real("drift_tolerance_momentum");
    p.drift_tolerance_hamiltonian = c.real("drift_tolerance_hamiltonian");
    return simulate_experiment(p);
  }
  if (cmd == "burgers") {
    BurgersParams p;
    p.u0 = datum_from(c);
    p.s_values = c.reals("s_values");
    p.gaps = c.reals("gaps");
    p.profile_gaps = c.reals("profile_gaps");
    p.num_modes = static_cast<std::size_t>(c.integer("N"));
    p.exponent_tolerance = c.real("exponent_tolerance");
    p.profile_tolerance = c.real("profile_tolerance");
    p.random_points = static_cast<std::size_t>(c.integer("random_points"));
    p.seed = static_cast<unsigned long>(c.seed);
    p.workers = workers;
    return burgers_experiment(p);
  }
  if (cmd == "inflate-periodic") {
    PeriodicInflationParams p;
    p.epsilon = c.real("epsilon");
    p.s = c.real("s");
    p.alpha = c.real("alpha");
    p.n_values = to_ints(c.integers("n_values"));
    p.num_modes = static_cast<std::size_t>(c.integer("N"));
    p.steps = static_cast<std::size_t>(c.integer("steps"));
    p.allow_any_s = c.boolean("allow_any_s");
    p.duhamel_quad_points = static_cast<int>(c.integer("duhamel_quad_points"));
    p.w_ratio_bound = c.real("w_ratio_bound");
    p.workers = workers;
    return periodic_inflation_experiment(p);
  }
  if (cmd == "inflate-line") {
    LineInflationParams p;
    p.u0 = burgers::InitialDatum::gaussian_derivative(c.real("amplitude"));
    p.alpha = c.real("alpha");
    p.s = c.real("s");
    p.epsilon = c.real("epsilon");
    p.lambda_values = c.reals("lambda_values");
    p.rho_values = c.reals("rho_values");
    p.period = c.real("period");
    p.num_modes = static_cast<std::size_t>(c.integer("N"));
    p.nu_values = c.reals("nu_values");
    p.dynamic_period = c.real("dynamic_period");
    p.dynamic_num_modes = static_cast<std::size_t>(c.integer("dynamic_N"));
    p.time_fractions = c.reals("time_fractions");
    p.c = c.real("c");
    p.allow_any_s = c.boolean("allow_any_s");
    p.workers = workers;
    return line_inflation_experiment(p);
  }
  if (cmd == "zero-dispersion") {
    ZeroDispersionParams p;
    p.u0 = datum_from(c);
    p.alpha = c.real("alpha");
    p.k = static_cast<int>(c.integer("k"));
    p.nu_values = c.reals("nu_values");
    p.T_obs = c.real("T_obs");
    p.num_modes = static_cast<std::size_t>(c.integer("N"));
    p.dt = c.real("dt");
    p.fit_error_ceiling = c.real("fit_error_ceiling");
    p.workers = workers;
    return zero_dispersion_experiment(p);
  }
  if (cmd == "breaking-time") {
    BreakingParams p;
    p.u0 = burgers::InitialDatum::negative_sine(c.real("amplitude"));
    p.alpha = c.real("alpha");
    p.delta = c.real("delta");
    p.num_modes = static_cast<std::size_t>(c.integer("N"));
    p.solver = solver_from(c);
    p.control_tolerance = c.real("control_tolerance");
    p.allow_any_alpha = c.boolean("allow_any_alpha");
    return breaking_time_experiment(p);
  }
  if (cmd == "symmetry-check") {
    SymmetryParams p;
    p.alpha = c.real("alpha");
    p.lambda = c.real("lambda");
    p.omega = c.real("omega");
    p.t = c.real("t");
    p.num_modes = static_cast<std::size_t>(c.integer("N"));
    p.period = c.real("period");
    p.dt = c.real("dt");
    p.amplitude = c.real("amplitude");
    return symmetry_experiment(p);
  }
  throw ConfigError({"unknown command '" + cmd + "'"});
}

std::string hex(std::uint64_t v) {
  std::ostringstream o;
  o << std::hex;
  o.width(16);
  o.fill('0');
  o << v;
  return o.str();
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string version_string() { return std::string(FKDV_VERSION) + " (" + FKDV_GIT_REVISION + ")"; }

ExperimentReport execute(const RunConfig& config) {
  try {
    return dispatch(config);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    // Parameter combinations the schema cannot see, e.g. a grid too coarse
    // for the requested n.
    throw ConfigError({e.what()});
  } catch (const std::exception& e) {
    ExperimentReport rep;
    rep.experiment = config.command;
    rep.errors.push_back(e.what());
    return rep;
  }
}

int exit_status(const ExperimentReport& report) {
  return report.all_passed() && report.errors.empty() && !report.verdicts.empty() ? 0 : 1;
}

ResultBundle run(const RunConfig& config) {
  const std::string started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  ResultBundle b;
  b.report = execute(config);
  b.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::filesystem::path dir = config.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message(), dir);

  for (const auto& t : b.report.tables) {
    b.tables.push_back(dir / (t.name + ".csv"));
    write_csv(t, b.tables.back());
  }
  Table verdicts("verdicts", {"name", "passed", "measured", "predicted", "tolerance", "prediction"});
  for (const auto& v : b.report.verdicts) {
    verdicts.add_row({v.name, std::string(v.passed ? "true" : "false"), v.measured, v.predicted,
                      v.tolerance, v.prediction});
  }
  b.tables.push_back(dir / "verdicts.csv");
  write_csv(verdicts, b.tables.back());
  if (!b.report.errors.empty()) {
    Table errors("errors", {"error"});
    for (const auto& e : b.report.errors) errors.add_row({e});
    b.tables.push_back(dir / "errors.csv");
    write_csv(errors, b.tables.back());
  }
  for (const auto& f : b.report.figures) {
    const Table* t = b.report.find_table(f.table);
    if (!t) {
      b.report.errors.push_back("figure " + f.name + " refers to missing table " + f.table);
      continue;
    }
    b.figures.push_back(dir / (f.name + ".svg"));
    write_svg(f, *t, b.figures.back());
  }

  const std::string echo = config.echo();
  std::ostringstream m;
  m << "# run manifest\n";
  m << "command: " << config.command << "\n";
  m << "version: " << version_string() << "\n";
  m << "simd: " << simd::kernels().name << "\n";
  m << "workers: " << config.workers << "\n";
  m << "seed: " << config.seed << "\n";
  m << "started_utc: " << started << "\n";
  m << "wall_seconds: " << format_double(b.wall_seconds) << "\n";
  m << "config_fnv1a: " << hex(fnv1a(echo)) << "\n";
  m << "status: " << (exit_status(b.report) == 0 ? "pass" : "fail") << "\n";
  m << "\n[config]\n" << echo;
  m << "\n[parameters]\n";
  for (const auto& [k, v] : b.report.params) m << k << ": " << v << "\n";
  if (!b.report.provenance.empty()) {
    m << "\n[provenance]\n";
    for (const auto& [k, v] : b.report.provenance) m << k << ": " << v << "\n";
  }
  m << "\n[verdicts]\n";
  for (const auto& v : b.report.verdicts) {
    m << (v.passed ? "PASS " : "FAIL ") << v.name << " measured=" << format_double(v.measured)
      << " predicted=" << format_double(v.predicted) << " tolerance=" << format_double(v.tolerance) << "\n";
  }
  if (!b.report.errors.empty()) {
    m << "\n[errors]\n";
    for (const auto& e : b.report.errors) m << e << "\n";
  }
  m << "\n[files]\n";
  for (const auto& p : b.tables) m << p.filename().string() << "\n";
  for (const auto& p : b.figures) m << p.filename().string() << "\n";

  b.manifest = dir / "manifest.txt";
  std::ofstream out(b.manifest, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + b.manifest.string() + " for writing", b.manifest);
  out << m.str();
  out.close();
  if (!out) throw IoError("write to " + b.manifest.string() + " failed", b.manifest);
  return b;
}

}  // namespace fkdv::io
