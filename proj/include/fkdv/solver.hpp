#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fkdv/dispersion.hpp"
#include "fkdv/spectral_field.hpp"
#include "fkdv/spectral_ops.hpp"

namespace fkdv {

struct FixedStep {
  double dt;
};

/// dt = safety / (max|u| * xi_max); dispersion is integrated exactly and
/// does not constrain the step.
struct CflStep {
  double safety = 0.5;
};

struct SolverConfig {
  std::variant<FixedStep, CflStep> dt_policy = CflStep{};
  bool dealias = true;
  double breaking_slope_factor = 50.0;
  double tail_fraction_limit = 0.1;
  std::size_t max_steps = 1'000'000;
  bool detect_breaking = true;
  /// Keep every k-th accepted state; 0 keeps only the initial and final ones.
  std::size_t snapshot_stride = 0;
  /// Test hook: drop u u_x and evolve the linear part only.
  bool nonlinear = true;

  /// Throws std::invalid_argument describing the first bad field.
  void validate() const;
};

struct Probe {
  std::string name;
  std::function<double(const SpectralField&)> evaluate;
};

struct Observation {
  double t = 0.0;
  ConservedQuantities conserved;
  double min_slope = 0.0;
  double max_abs = 0.0;
  double tail_fraction = 0.0;
  std::vector<double> probes;
};

struct Snapshot {
  double t;
  SpectralField field;
};

enum class Termination { reached_t_end, breaking_detected, step_budget_exhausted };

std::string to_string(Termination t);

struct Trajectory {
  std::vector<double> times;
  std::vector<Observation> observations;
  std::vector<Snapshot> snapshots;
  std::vector<std::string> probe_names;
  Termination termination = Termination::reached_t_end;
  std::optional<double> breaking_time;
  std::size_t steps = 0;

  const SpectralField& final_state() const { return snapshots.back().field; }
  double final_time() const { return snapshots.back().t; }
};

/// Raised when a step produces NaN or Inf. Carries the last finite state.
class NonFiniteStateError : public std::runtime_error {
 public:
  NonFiniteStateError(double t, SpectralField last_good)
      : std::runtime_error("non-finite coefficients after t = " + std::to_string(t)),
        time(t),
        last_good_state(std::move(last_good)) {}

  double time;
  SpectralField last_good_state;
};

/// Integrates u_t + M u_x + u u_x = 0 with integrating-factor RK4: the
/// dispersive part is propagated exactly, -(u^2/2)_x is evaluated
/// pseudo-spectrally with two-thirds dealiasing.
Trajectory evolve(const SpectralField& u0, const DispersionSpec& spec, double t_end,
                  const SolverConfig& cfg, const std::vector<Probe>& probes = {});

/// Fraction of the (non-mean) spectral energy held by the top third of the
/// retained modes.
double tail_energy_fraction(const SpectralField& state, bool dealiased);

double min_slope(const SpectralField& state);

bool detect_breaking(const SpectralField& state, const SolverConfig& cfg,
                     double initial_min_slope);

/// Requires a CFL policy.
double choose_dt(const SpectralField& state, const DispersionSpec& spec, const SolverConfig& cfg);

/// Second Duhamel iterate u2(t) = -int_0^t S(t - tau) (u1 u1_x)(tau) dtau with
/// u1 = S(tau) u0, by composite Gauss-Legendre quadrature using quad_points
/// nodes in total (panels of at most 16 nodes).
SpectralField duhamel_u2(const SpectralField& u0, const DispersionSpec& spec, double t,
                         int quad_points = 64);

}  // namespace fkdv
