#include <cmath>
#include <numbers>
#include <string>

#include "fkdv/experiments.hpp"
#include "fkdv/transform.hpp"

namespace fkdv {
namespace {

double relative_l2(const SpectralField& a, const SpectralField& b) {
  const double ref = sobolev_norm(b, {0.0, false});
  const double d = sobolev_norm(a - b, {0.0, false});
  return ref > 0.0 ? d / ref : d;
}

SolverConfig fixed(double dt) {
  SolverConfig cfg;
  cfg.dt_policy = FixedStep{dt};
  cfg.detect_breaking = false;
  return cfg;
}

}  // namespace

ExperimentReport symmetry_checks(const SpectralField& u0, const DispersionSpec& spec, double lambda,
                                 double omega, double t, double dt) {
  if (!spec.is_fractional()) {
    throw std::invalid_argument("the scaling symmetry needs a homogeneous (fractional) symbol");
  }
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(t > 0.0) || !(dt > 0.0)) throw std::invalid_argument("t and dt must be positive");
  const PeriodicGrid& grid = u0.grid();
  const double N = static_cast<double>(grid.num_modes());
  const double cells = omega * t * N / grid.period();
  const double whole = std::round(cells);
  if (std::abs(cells - whole) > 1e-9 * std::max(1.0, std::abs(cells))) {
    const double nearest = whole * grid.period() / (N * t);
    throw IncommensurateError("omega t N / L = " + format_double(cells) +
                                  " is not an integer; nearest valid omega is " +
                                  format_double(nearest),
                              nearest);
  }

  const double alpha = spec.alpha();
  ExperimentReport rep;
  rep.experiment = "symmetry-check";
  rep.param("dispersion", spec.describe());
  rep.param("lambda", lambda);
  rep.param("omega", omega);
  rep.param("t", t);
  rep.param("dt", dt);
  rep.param("N", N);

  const SpectralField base = evolve(u0, spec, t, fixed(dt)).final_state();

  // lambda^alpha u(lambda x, lambda^(alpha+1) t) on the period L / lambda.
  const double amp = std::pow(lambda, alpha);
  const double tscale = std::pow(lambda, alpha + 1.0);
  const PeriodicGrid small(grid.num_modes(), grid.period() / lambda, grid.origin() / lambda);
  SpectralField scaled(small, std::vector<cplx>(u0.coeffs().begin(), u0.coeffs().end()));
  scaled *= amp;
  SpectralField back = evolve(scaled, spec, t / tscale, fixed(dt / tscale)).final_state();
  back *= 1.0 / amp;
  const SpectralField back_on_grid(grid, std::vector<cplx>(back.coeffs().begin(), back.coeffs().end()));
  const double scaling = relative_l2(back_on_grid, base);

  // u(x - omega t, t) + omega against the run started from u0 + omega.
  SpectralField lifted = u0;
  lifted.set_mode(0, lifted.coefficient(0) + omega);
  const SpectralField moving = evolve(lifted, spec, t, fixed(dt)).final_state();
  // A shift by a whole number of cells is exact in coefficient space.
  const long n = static_cast<long>(grid.num_modes());
  const long shift = ((static_cast<long>(whole) % n) + n) % n;
  SpectralField shifted = base;
  auto c = shifted.coeffs();
  for (long j = 1; j < static_cast<long>(c.size()); ++j) {
    c[j] *= std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((j * shift) % n) / N);
  }
  shifted.set_mode(0, shifted.coefficient(0) + omega);
  const double galilean = relative_l2(shifted, moving);

  Table tab("symmetry", {"check", "parameter", "t", "relative_L2_discrepancy"});
  tab.add_row({std::string("scaling"), lambda, t, scaling});
  tab.add_row({std::string("galilean"), omega, t, galilean});
  rep.tables.push_back(std::move(tab));
  rep.check_below("scaling_discrepancy", scaling, 1e-6,
                  "lambda^alpha u(lambda x, lambda^(alpha+1) t) solves the same equation");
  rep.check_below("galilean_discrepancy", galilean, 1e-6,
                  "u(x - omega t, t) + omega solves the same equation");
  return rep;
}

ExperimentReport symmetry_experiment(const SymmetryParams& p) {
  const PeriodicGrid grid(p.num_modes, p.period, -0.5 * p.period);
  const double k = 2.0 * std::numbers::pi / p.period;
  std::vector<double> x = grid.points();
  for (auto& v : x) v = p.amplitude * (std::sin(k * v) + 0.5 * std::cos(2.0 * k * v));
  return symmetry_checks(to_spectral(x, grid), DispersionSpec::fractional(p.alpha), p.lambda,
                         p.omega, p.t, p.dt);
}

}  // namespace fkdv
