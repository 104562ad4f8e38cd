#include <algorithm>
#include <cmath>
#include <string>

#include "fkdv/experiments.hpp"
#include "fkdv/transform.hpp"

namespace fkdv {
namespace {

DispersionSpec make_spec(const SimulateParams& p) {
  if (p.dispersion == "fractional") return DispersionSpec::fractional(p.alpha, p.dispersion_scale);
  if (p.dispersion == "whitham") return DispersionSpec::whitham().scaled(p.dispersion_scale);
  if (p.dispersion == "ilw") return DispersionSpec::ilw(p.depth).scaled(p.dispersion_scale);
  if (p.dispersion == "none") return DispersionSpec::none();
  throw std::invalid_argument("unknown dispersion '" + p.dispersion + "'");
}

burgers::InitialDatum make_datum(const SimulateParams& p) {
  if (p.datum == "negative_sine") {
    return burgers::InitialDatum::negative_sine(p.amplitude, 2.0 * 3.14159265358979323846 * p.mode / p.period);
  }
  if (p.datum == "gaussian_derivative") {
    return burgers::InitialDatum::gaussian_derivative(p.amplitude, 0.5 * p.period);
  }
  if (p.datum == "two_mode") return burgers::InitialDatum::two_mode(p.amplitude, p.mode);
  throw std::invalid_argument("unknown datum '" + p.datum + "'");
}

}  // namespace

ExperimentReport simulate_experiment(const SimulateParams& p) {
  const DispersionSpec spec = make_spec(p);
  const burgers::InitialDatum datum = make_datum(p);
  const PeriodicGrid grid(p.num_modes, p.period, -0.5 * p.period);
  std::vector<double> x = grid.points();
  for (auto& v : x) v = datum.value(v);
  const SpectralField u0 = to_spectral(x, grid);

  std::vector<Probe> probes;
  probes.push_back({"L2_norm", [](const SpectralField& f) { return sobolev_norm(f, {0.0, true}); }});
  for (double s : p.sobolev_s) {
    probes.push_back({"H_" + format_double(s) + "_norm",
                      [s](const SpectralField& f) { return sobolev_norm(f, {s, true}); }});
  }

  ExperimentReport rep;
  rep.experiment = "simulate";
  rep.param("dispersion", spec.describe());
  rep.param("datum", datum.name());
  rep.param("amplitude", p.amplitude);
  rep.param("N", static_cast<double>(p.num_modes));
  rep.param("period", p.period);
  rep.param("t_end", p.t_end);

  const Trajectory traj = evolve(u0, spec, p.t_end, p.solver, probes);
  rep.param("termination", to_string(traj.termination));
  rep.param("steps", static_cast<double>(traj.steps));
  if (traj.breaking_time) rep.param("breaking_time", *traj.breaking_time);

  std::vector<std::string> cols{"t", "mass", "momentum", "hamiltonian", "min_slope", "max_abs",
                                "tail_fraction"};
  for (const auto& n : traj.probe_names) cols.push_back(n);
  Table ts("time_series", cols);
  const std::size_t stride = std::max<std::size_t>(1, p.record_stride);
  for (std::size_t i = 0; i < traj.observations.size(); ++i) {
    if (i % stride != 0 && i + 1 != traj.observations.size()) continue;
    const auto& o = traj.observations[i];
    std::vector<Cell> row{o.t, o.conserved.mass, o.conserved.momentum, o.conserved.hamiltonian,
                          o.min_slope, o.max_abs, o.tail_fraction};
    for (double v : o.probes) row.push_back(v);
    ts.add_row(std::move(row));
  }
  rep.tables.push_back(std::move(ts));
  rep.figures.push_back({"norms_vs_time", "norms against time", "time_series", "t",
                         std::vector<std::string>(cols.begin() + 7, cols.end()), false, false, false});

  // Relative drifts. A quantity that starts at zero (the mass of an odd datum)
  // is measured against its natural scale instead: sqrt(L * momentum) bounds
  // |mass| by Cauchy-Schwarz.
  const auto& first = traj.observations.front().conserved;
  const double mass_scale = std::max(std::abs(first.mass), std::sqrt(p.period * first.momentum));
  double dm = 0.0, dp = 0.0, dh = 0.0;
  for (const auto& o : traj.observations) {
    dm = std::max(dm, std::abs(o.conserved.mass - first.mass));
    dp = std::max(dp, std::abs(o.conserved.momentum - first.momentum));
    dh = std::max(dh, std::abs(o.conserved.hamiltonian - first.hamiltonian));
  }
  dm /= mass_scale > 0.0 ? mass_scale : 1.0;
  dp /= first.momentum > 0.0 ? first.momentum : 1.0;
  dh /= std::abs(first.hamiltonian) > 0.0 ? std::abs(first.hamiltonian) : 1.0;

  Table drift("drift", {"quantity", "initial", "final", "max_relative_drift", "tolerance"});
  const auto& last = traj.observations.back().conserved;
  for (const auto& name : p.observers) {
    if (name == "mass") {
      drift.add_row({name, first.mass, last.mass, dm, p.drift_tolerance_mass});
      rep.check_below("mass_drift", dm, p.drift_tolerance_mass, "int u is conserved");
    } else if (name == "momentum") {
      drift.add_row({name, first.momentum, last.momentum, dp, p.drift_tolerance_momentum});
      rep.check_below("momentum_drift", dp, p.drift_tolerance_momentum, "int u^2 is conserved");
    } else if (name == "hamiltonian") {
      drift.add_row({name, first.hamiltonian, last.hamiltonian, dh, p.drift_tolerance_hamiltonian});
      rep.check_below("hamiltonian_drift", dh, p.drift_tolerance_hamiltonian,
                      "int (u M u / 2 + u^3 / 6) is conserved");
    } else {
      throw std::invalid_argument("unknown observer '" + name + "'");
    }
  }
  rep.tables.push_back(std::move(drift));
  if (first.mean_excluded) rep.param("hamiltonian_mean_excluded", "true");
  return rep;
}

}  // namespace fkdv
