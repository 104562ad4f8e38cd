#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fkdv/burgers.hpp"
#include "fkdv/dispersion.hpp"
#include "fkdv/report.hpp"
#include "fkdv/solver.hpp"

namespace fkdv {

// ---------------------------------------------------------------------------
// Periodic construction: two adjacent high modes pump mode 1.

class ResolutionTooLowError : public std::invalid_argument {
 public:
  ResolutionTooLowError(const std::string& what, std::size_t required)
      : std::invalid_argument(what), required_modes(required) {}
  std::size_t required_modes;
};

/// u0 = eps n^{-s} (cos(n x) + cos((n+1) x)) on the 2 pi torus. Requires
/// N/3 > 2n + 2 so that every mode of u2 survives dealiasing.
SpectralField build_two_mode_datum(double epsilon, double s, int n, const PeriodicGrid& grid);

/// Smallest power of two N with N/3 > 2n + 2 and N >= 16 (n + 1).
std::size_t default_num_modes(int n);

/// Second iterate for the two-mode datum under |xi|^alpha dispersion, in
/// closed form. Supported on |j| in {1, 2n, 2n+1, 2n+2}.
SpectralField closed_form_u2(double epsilon, double s, int n, double alpha, double t,
                             const PeriodicGrid& grid);

class NOverCeilingError : public std::range_error {
 public:
  NOverCeilingError(const std::string& what, double required)
      : std::range_error(what), required_n(required) {}
  double required_n;
};

/// Smallest integer n >= 4 with eps^2 n^{-s/4-1/2} > 2/eps and
/// n^{7s/4-1/2} < eps. Requires s < -2.
int select_n(double epsilon, double s, double ceiling = 1 << 20);

/// t_n = n^{7s/4 - 1/2}.
double observation_time(double s, int n);

struct PeriodicInflationParams {
  double epsilon = 0.1;
  double s = -2.5;
  double alpha = 1.0;
  std::vector<int> n_values{16, 32, 64, 128};
  /// 0 picks default_num_modes(n) per case.
  std::size_t num_modes = 0;
  /// Time steps per run up to t_n.
  std::size_t steps = 16;
  /// Allow s >= -2 for scaling studies.
  bool allow_any_s = false;
  int duhamel_quad_points = 64;
  /// Constant C in ||w(t_n)||_{L^2} <= C eps^3 n^{s/2+1}.
  double w_ratio_bound = 2.0;
  unsigned workers = 0;

  void validate() const;
};

ExperimentReport periodic_inflation_experiment(const PeriodicInflationParams& p);

// ---------------------------------------------------------------------------
// Real-line construction: scaling plus zero-dispersion limit.

class InsufficientDecayError : public std::invalid_argument {
 public:
  InsufficientDecayError(const std::string& what, double suggested)
      : std::invalid_argument(what), suggested_period(suggested) {}
  double suggested_period;
};

/// Samples x -> lambda^alpha u0(lambda x / nu) on the grid. Rejects data that
/// do not decay below 1e-12 at the grid ends.
SpectralField build_scaled_datum(const burgers::InitialDatum& u0, double lambda, double nu,
                                 double alpha, const PeriodicGrid& grid);

struct LineInflationParams {
  /// Default: -x exp(-x^2).
  std::optional<burgers::InitialDatum> u0;
  double alpha = -0.5;
  double s = 0.9;
  double epsilon = 0.1;
  /// Scale ratios rho = nu / lambda for the initial-norm sweep.
  std::vector<double> lambda_values{1.0, 0.5, 0.25, 0.125};
  std::vector<double> rho_values{1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128};
  double period = 16.0;
  std::size_t num_modes = 32768;
  /// Dispersion strengths for the dynamic part.
  std::vector<double> nu_values{1e-1, 1e-2, 1e-3};
  /// Dynamic runs on their own grid.
  double dynamic_period = 16.0;
  std::size_t dynamic_num_modes = 4096;
  /// Fractions of T* at which the dynamic runs are compared with the oracle.
  std::vector<double> time_fractions{0.5, 0.6, 0.7, 0.8};
  double c = 1.0;
  /// Relax the exponent ranges for scaling studies.
  bool allow_any_s = false;
  unsigned workers = 0;

  void validate() const;
};

ExperimentReport line_inflation_experiment(const LineInflationParams& p);

struct ZeroDispersionParams {
  std::optional<burgers::InitialDatum> u0;  // default -sin x on the 2 pi torus
  double alpha = -1.0;
  int k = 2;
  std::vector<double> nu_values{1e-1, 1e-2, 1e-3, 1e-4};
  double T_obs = 0.4;
  std::size_t num_modes = 256;
  double dt = 1e-4;
  /// Errors above this are treated as outside the asymptotic regime.
  double fit_error_ceiling = 1.0;
  unsigned workers = 0;
};

ExperimentReport zero_dispersion_experiment(const ZeroDispersionParams& p);

/// ||f||_{H^k} with weight (1 + xi^2)^k including the mean.
double hk_norm(const SpectralField& f, int k);

// ---------------------------------------------------------------------------
// Breaking time and symmetries.

struct BreakingParams {
  std::optional<burgers::InitialDatum> u0;  // default -20 sin x
  double alpha = -0.5;
  double delta = 0.2;
  std::size_t num_modes = 2048;
  SolverConfig solver{};
  /// Window for the dispersion-free control run, relative to -1/min u0'.
  double control_tolerance = 0.02;
  bool allow_any_alpha = false;
};

ExperimentReport breaking_time_experiment(const BreakingParams& p);

struct SymmetryParams {
  double alpha = -0.5;
  double lambda = 2.0;
  double omega = 1.0;
  /// omega t N / L = 10 whole cells for the defaults.
  double t = 10.0 * 2.0 * 3.14159265358979323846 / 256.0;
  std::size_t num_modes = 256;
  double period = 2.0 * 3.14159265358979323846;
  double dt = 1e-3;
  double amplitude = 0.3;
};

class IncommensurateError : public std::invalid_argument {
 public:
  IncommensurateError(const std::string& what, double nearest)
      : std::invalid_argument(what), nearest_valid(nearest) {}
  double nearest_valid;
};

/// Scaling and Galilean checks on the given datum. The scaled run uses the
/// period L / lambda; lambda must make N lambda-independent (any lambda > 0 is
/// commensurate since the grid is rescaled with it). The Galilean shift omega t
/// must be a whole number of grid cells.
ExperimentReport symmetry_checks(const SpectralField& u0, const DispersionSpec& spec, double lambda,
                                 double omega, double t, double dt);

/// Default datum 0.3 (sin x + cos 2x / 2) on the 2 pi torus.
ExperimentReport symmetry_experiment(const SymmetryParams& p);

// ---------------------------------------------------------------------------
// Generic runs.

struct SimulateParams {
  double alpha = 1.0;
  std::string dispersion = "fractional";  // fractional | whitham | ilw | none
  double depth = 1.0;
  double dispersion_scale = 1.0;
  std::size_t num_modes = 256;
  double period = 2.0 * 3.14159265358979323846;
  double t_end = 0.5;
  std::string datum = "negative_sine";  // negative_sine | gaussian_derivative | two_mode
  double amplitude = 1.0;
  int mode = 1;
  SolverConfig solver{};
  std::vector<std::string> observers{"mass", "momentum", "hamiltonian"};
  std::vector<double> sobolev_s{};
  std::size_t record_stride = 1;
  double drift_tolerance_mass = 1e-8;
  double drift_tolerance_momentum = 1e-8;
  double drift_tolerance_hamiltonian = 1e-6;
};

ExperimentReport simulate_experiment(const SimulateParams& p);

struct BurgersParams {
  std::optional<burgers::InitialDatum> u0;  // default -sin x
  std::vector<double> s_values{0.9, 1.0};
  std::vector<double> gaps{1e-1, 5e-2, 2.5e-2, 1.25e-2, 6.25e-3, 3.125e-3, 1e-3};
  std::vector<double> profile_gaps{1e-3, 1e-4};
  std::size_t num_modes = 1 << 21;
  double exponent_tolerance = 0.10;
  double profile_tolerance = 0.05;
  std::size_t random_points = 1000;
  unsigned long seed = 12345;
  unsigned workers = 0;
};

ExperimentReport burgers_experiment(const BurgersParams& p);

}  // namespace fkdv
