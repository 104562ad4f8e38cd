#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fkdv/simd/kernels.hpp"
#include "fkdv/solver.hpp"
#include "fkdv/transform.hpp"

namespace fkdv {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::reached_t_end:
      return "reached_t_end";
    case Termination::breaking_detected:
      return "breaking_detected";
    case Termination::step_budget_exhausted:
      return "step_budget_exhausted";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (const auto* f = std::get_if<FixedStep>(&dt_policy)) {
    if (!(f->dt > 0.0) || !std::isfinite(f->dt)) {
      throw std::invalid_argument("fixed time step must be positive");
    }
  } else {
    const double safety = std::get<CflStep>(dt_policy).safety;
    if (!(safety > 0.0 && safety <= 1.0)) {
      throw std::invalid_argument("CFL safety must lie in (0, 1]");
    }
  }
  if (!(breaking_slope_factor > 0.0)) {
    throw std::invalid_argument("breaking_slope_factor must be positive");
  }
  if (!(tail_fraction_limit > 0.0 && tail_fraction_limit < 1.0)) {
    throw std::invalid_argument("tail_fraction_limit must lie in (0, 1)");
  }
  if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");
}

namespace {

bool all_finite(std::span<const cplx> c) {
  for (const auto& z : c) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

// Physical-space diagnostics of one state, sharing one inverse transform for
// u and one for u_x.
struct PhysicalStats {
  double min_slope;
  double max_abs;
};

class Diagnostics {
 public:
  explicit Diagnostics(const PeriodicGrid& grid)
      : xi_(grid.wavenumbers()), u_(grid.num_modes()), half_(grid.half_size()) {}

  PhysicalStats compute(const SpectralField& state) {
    const auto& k = simd::kernels();
    inverse_transform(state.coeffs(), u_, scratch_);
    const double max_abs = k.max_abs(u_.data(), u_.size());
    k.mul_i_real(xi_.data(), 1.0, state.coeffs().data(), half_.data(), half_.size());
    half_.back() = 0.0;
    inverse_transform(half_, u_, scratch_);
    return {k.min_value(u_.data(), u_.size()), max_abs};
  }

 private:
  std::span<const double> xi_;
  std::vector<double> u_;
  std::vector<cplx> half_;
  std::vector<cplx> scratch_;
};

class IntegratingFactorRk4 {
 public:
  IntegratingFactorRk4(const PeriodicGrid& grid, const DispersionSpec& spec, const SolverConfig& cfg)
      : grid_(grid),
        omega_(spec.frequency_table(grid)),
        xi_(grid.wavenumbers()),
        nonlinear_(cfg.nonlinear),
        cutoff_(cfg.dealias ? static_cast<std::size_t>(dealias_cutoff(grid.num_modes()))
                            : grid.num_modes() / 2 - 1),
        m_(grid.half_size()) {
    for (auto* buf : {&e1_, &e2_, &a_, &b_, &c_, &d_, &t1_, &t2_}) buf->resize(m_);
    phys_.resize(grid.num_modes());
  }

  void step(std::span<cplx> u, double h) {
    const auto& k = simd::kernels();
    if (h != cached_h_) {
      for (std::size_t j = 0; j < m_; ++j) {
        e1_[j] = std::polar(1.0, -0.5 * omega_[j] * h);
        e2_[j] = std::polar(1.0, -omega_[j] * h);
      }
      cached_h_ = h;
    }
    auto* ud = reinterpret_cast<double*>(u.data());
    auto dbl = [](std::vector<cplx>& v) { return reinterpret_cast<double*>(v.data()); };
    const std::size_t nd = 2 * m_;

    nonlinear(u, a_);

    // b = N(E1 (u + h/2 a))
    std::copy(u.begin(), u.end(), t1_.begin());
    k.axpy(0.5 * h, dbl(a_), dbl(t1_), nd);
    k.mul_complex(e1_.data(), t1_.data(), t1_.data(), m_);
    nonlinear(t1_, b_);

    // c = N(E1 u + h/2 b)
    k.mul_complex(e1_.data(), u.data(), t1_.data(), m_);
    k.axpy(0.5 * h, dbl(b_), dbl(t1_), nd);
    nonlinear(t1_, c_);

    // d = N(E2 u + h E1 c)
    k.mul_complex(e2_.data(), u.data(), t1_.data(), m_);
    k.mul_complex(e1_.data(), c_.data(), t2_.data(), m_);
    k.axpy(h, dbl(t2_), dbl(t1_), nd);
    nonlinear(t1_, d_);

    // u <- E2 (u + h/6 a) + h/3 E1 (b + c) + h/6 d
    k.axpy(h / 6.0, dbl(a_), ud, nd);
    k.mul_complex(e2_.data(), u.data(), u.data(), m_);
    k.axpy(1.0, dbl(c_), dbl(b_), nd);
    k.mul_complex(e1_.data(), b_.data(), b_.data(), m_);
    k.axpy(h / 3.0, dbl(b_), ud, nd);
    k.axpy(h / 6.0, dbl(d_), ud, nd);
  }

 private:
  // out = -(u^2 / 2)_x, truncated to the retained band
  void nonlinear(std::span<const cplx> u, std::vector<cplx>& out) {
    if (!nonlinear_) {
      std::fill(out.begin(), out.end(), cplx(0.0, 0.0));
      return;
    }
    const auto& k = simd::kernels();
    inverse_transform(u, phys_, scratch_);
    k.square(phys_.data(), phys_.data(), phys_.size());
    forward_transform(phys_, out);
    k.mul_i_real(xi_.data(), -0.5, out.data(), out.data(), m_);
    for (std::size_t j = cutoff_ + 1; j < m_; ++j) out[j] = 0.0;
  }

  PeriodicGrid grid_;
  std::vector<double> omega_;
  std::span<const double> xi_;
  bool nonlinear_;
  std::size_t cutoff_;
  std::size_t m_;
  double cached_h_ = std::numeric_limits<double>::quiet_NaN();
  std::vector<cplx> e1_, e2_, a_, b_, c_, d_, t1_, t2_;
  std::vector<double> phys_;
  std::vector<cplx> scratch_;
};

double cfl_dt(double max_abs, double xi_max, double safety) {
  const double speed = max_abs > 0.0 ? max_abs : 1.0;
  return safety / (speed * xi_max);
}

}  // namespace

double tail_energy_fraction(const SpectralField& state, bool dealiased) {
  const auto c = state.coeffs();
  const std::size_t n = state.grid().num_modes();
  const std::size_t retained = dealiased ? static_cast<std::size_t>(dealias_cutoff(n)) : n / 2;
  const std::size_t tail_start = (2 * retained) / 3 + 1;
  double total = 0.0, tail = 0.0;
  for (std::size_t j = 1; j <= retained && j < c.size(); ++j) {
    const double e = std::norm(c[j]);
    total += e;
    if (j >= tail_start) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

double min_slope(const SpectralField& state) {
  Diagnostics diag(state.grid());
  return diag.compute(state).min_slope;
}

bool detect_breaking(const SpectralField& state, const SolverConfig& cfg,
                     double initial_min_slope) {
  if (initial_min_slope < 0.0 &&
      min_slope(state) < cfg.breaking_slope_factor * initial_min_slope) {
    return true;
  }
  return tail_energy_fraction(state, cfg.dealias) > cfg.tail_fraction_limit;
}

double choose_dt(const SpectralField& state, const DispersionSpec& /*spec*/,
                 const SolverConfig& cfg) {
  const auto* cfl = std::get_if<CflStep>(&cfg.dt_policy);
  if (!cfl) throw std::invalid_argument("choose_dt requires a CFL time-step policy");
  const auto u = to_physical(state);
  const double m = simd::kernels().max_abs(u.data(), u.size());
  return cfl_dt(m, state.grid().max_wavenumber(), cfl->safety);
}

Trajectory evolve(const SpectralField& u0, const DispersionSpec& spec, double t_end,
                  const SolverConfig& cfg, const std::vector<Probe>& probes) {
  cfg.validate();
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw std::invalid_argument("evolve: t_end must be positive");
  }
  if (!all_finite(u0.coeffs())) throw NonFiniteStateError(0.0, u0);

  const auto& grid = u0.grid();
  SpectralField state = cfg.dealias ? dealias_two_thirds(u0) : u0;
  state.coeffs().back() = 0.0;

  IntegratingFactorRk4 rk(grid, spec, cfg);
  Diagnostics diag(grid);

  Trajectory traj;
  for (const auto& p : probes) traj.probe_names.push_back(p.name);

  auto observe = [&](double t) {
    const PhysicalStats stats = diag.compute(state);
    Observation obs;
    obs.t = t;
    obs.conserved = conserved_triplet(state, spec);
    obs.min_slope = stats.min_slope;
    obs.max_abs = stats.max_abs;
    obs.tail_fraction = tail_energy_fraction(state, cfg.dealias);
    for (const auto& p : probes) obs.probes.push_back(p.evaluate(state));
    traj.times.push_back(t);
    traj.observations.push_back(std::move(obs));
    return stats;
  };

  PhysicalStats stats = observe(0.0);
  const double initial_min_slope = stats.min_slope;
  traj.snapshots.push_back({0.0, state});

  // Fixed steps are evened out so the last one lands on t_end exactly.
  std::size_t fixed_count = 0;
  double fixed_h = 0.0;
  if (const auto* f = std::get_if<FixedStep>(&cfg.dt_policy)) {
    fixed_count = static_cast<std::size_t>(std::ceil(t_end / f->dt * (1.0 - 1e-12)));
    fixed_count = std::max<std::size_t>(fixed_count, 1);
    fixed_h = t_end / static_cast<double>(fixed_count);
  }

  double t = 0.0;
  bool done = false;
  while (!done) {
    if (traj.steps == cfg.max_steps) {
      traj.termination = Termination::step_budget_exhausted;
      break;
    }
    double h;
    if (fixed_count > 0) {
      h = fixed_h;
      done = traj.steps + 1 == fixed_count;
    } else {
      h = cfl_dt(stats.max_abs, grid.max_wavenumber(), std::get<CflStep>(cfg.dt_policy).safety);
      if (t + h >= t_end * (1.0 - 1e-14)) {
        h = t_end - t;
        done = true;
      }
    }

    SpectralField previous = state;
    rk.step(state.coeffs(), h);
    state.coeffs().front() = cplx(state.coeffs().front().real(), 0.0);
    if (!all_finite(state.coeffs())) throw NonFiniteStateError(t, std::move(previous));
    ++traj.steps;
    t = done ? t_end : (fixed_count > 0 ? fixed_h * static_cast<double>(traj.steps) : t + h);

    stats = observe(t);
    const bool keep = done || (cfg.snapshot_stride > 0 && traj.steps % cfg.snapshot_stride == 0);

    if (cfg.detect_breaking) {
      const bool steep = initial_min_slope < 0.0 &&
                         stats.min_slope < cfg.breaking_slope_factor * initial_min_slope;
      if (steep || traj.observations.back().tail_fraction > cfg.tail_fraction_limit) {
        traj.termination = Termination::breaking_detected;
        traj.breaking_time = t;
        traj.snapshots.push_back({t, state});
        return traj;
      }
    }
    if (keep) traj.snapshots.push_back({t, state});
  }
  if (traj.snapshots.back().t != t) traj.snapshots.push_back({t, state});
  return traj;
}

}  // namespace fkdv
