#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "fkdv/experiments.hpp"
#include "fkdv/fit.hpp"

namespace fkdv {
namespace {

constexpr double kResonanceGuard = 1e-6;

void require_torus(const PeriodicGrid& grid) {
  if (std::abs(grid.period() - 2.0 * std::numbers::pi) > 1e-12) {
    throw std::invalid_argument("two-mode construction lives on the 2 pi torus");
  }
}

void require_resolution(int n, const PeriodicGrid& grid) {
  if (!(static_cast<double>(grid.num_modes()) / 3.0 > 2.0 * n + 2.0)) {
    const std::size_t need = default_num_modes(n);
    throw ResolutionTooLowError("N = " + std::to_string(grid.num_modes()) +
                                    " does not keep mode 2n+2 under dealiasing; use N >= " +
                                    std::to_string(need),
                                need);
  }
}

// sin(d t / 2) / d, or its limit t / 2 when the resonance denominator vanishes.
double resonant_factor(double d, double denominator, double t) {
  if (std::abs(denominator) < kResonanceGuard) return 0.5 * t;
  return std::sin(0.5 * d * t) / d;
}

// Adds amp * sin(k x - phase) to the field.
void add_sine(SpectralField& f, long k, double amp, double phase) {
  // sin(theta) = (e^{i theta} - e^{-i theta}) / 2i
  const cplx c = amp * cplx(0.0, -0.5) * std::polar(1.0, -phase);
  f.set_mode(k, f.coefficient(k) + c);
}

double power(double base, double e) { return std::pow(base, e); }

}  // namespace

std::size_t default_num_modes(int n) {
  std::size_t N = std::bit_ceil(static_cast<std::size_t>(16 * (n + 1)));
  while (!(static_cast<double>(N) / 3.0 > 2.0 * n + 2.0)) N *= 2;
  return std::max<std::size_t>(N, 8);
}

SpectralField build_two_mode_datum(double epsilon, double s, int n, const PeriodicGrid& grid) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (n < 1) throw std::invalid_argument("n must be positive");
  require_torus(grid);
  require_resolution(n, grid);
  SpectralField u(grid);
  const double c = 0.5 * epsilon * power(n, -s);
  u.set_mode(n, c);
  u.set_mode(n + 1, c);
  return u;
}

double observation_time(double s, int n) { return power(n, 1.75 * s - 0.5); }

SpectralField closed_form_u2(double epsilon, double s, int n, double alpha, double t,
                             const PeriodicGrid& grid) {
  require_torus(grid);
  require_resolution(n, grid);
  SpectralField u2(grid);
  if (t == 0.0) return u2;

  const double A2 = power(epsilon * power(n, -s), 2.0);
  const double nn = n, n1 = n + 1.0, m = 2.0 * n + 1.0;
  const double a = power(nn, alpha + 1.0);
  const double b = power(n1, alpha + 1.0);
  const double c = power(m, alpha + 1.0);
  const double r = power(2.0, alpha) - 1.0;

  // Each interaction feeding mode k at combined frequency Omega contributes
  // A^2 K sin(d t / 2) / d * sin(k x - (omega_k + Omega) t / 2), d = omega_k - Omega.
  auto term = [&](long k, double K, double omega_k, double Omega, double denominator) {
    const double d = omega_k - Omega;
    add_sine(u2, k, A2 * K * resonant_factor(d, denominator, t), 0.5 * (omega_k + Omega) * t);
  };
  // Each mode with itself.
  term(2 * n, nn, power(2.0 * nn, alpha + 1.0), 2.0 * a, r);
  term(2 * n + 2, n1, power(2.0 * n1, alpha + 1.0), 2.0 * b, r);
  // Difference and sum of the two modes.
  term(1, 1.0, 1.0, b - a, b - a - 1.0);
  term(2 * n + 1, m, c, a + b, c - a - b);
  return u2;
}

int select_n(double epsilon, double s, double ceiling) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(s < -2.0)) throw std::invalid_argument("select_n requires s < -2");
  const double p = -s / 4.0 - 0.5;   // > 0
  const double q = 1.75 * s - 0.5;   // < 0
  // eps^2 n^p > 2 / eps  <=>  n > (2 / eps^3)^{1/p};  n^q < eps  <=>  n > eps^{1/q}
  const double need = std::max({4.0, power(2.0 / (epsilon * epsilon * epsilon), 1.0 / p),
                                power(epsilon, 1.0 / q)});
  if (need >= ceiling) {
    throw NOverCeilingError("select_n: n must exceed " + format_double(need) +
                                ", above the ceiling " + format_double(ceiling),
                            need);
  }
  int n = std::max(4, static_cast<int>(std::floor(need)));
  auto ok = [&](int k) {
    return epsilon * epsilon * power(k, p) > 2.0 / epsilon && power(k, q) < epsilon;
  };
  while (!ok(n)) ++n;
  while (n > 4 && ok(n - 1)) --n;
  return n;
}

void PeriodicInflationParams::validate() const {
  std::vector<std::string> problems;
  if (!(epsilon > 0.0)) problems.push_back("epsilon must be positive");
  if (!allow_any_s && !(s < -2.0)) problems.push_back("s must be < -2");
  if (!(alpha >= -1.0 && alpha < 2.0)) problems.push_back("alpha must lie in [-1, 2)");
  if (n_values.empty()) problems.push_back("n_values must not be empty");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 4) problems.push_back("every n must be >= 4");
    if (i > 0 && n_values[i] <= n_values[i - 1]) problems.push_back("n_values must increase");
    if (n_values[i] >= 4 && !(10.0 * observation_time(s, n_values[i]) < power(n_values[i], -alpha - 1.0))) {
      problems.push_back("t_n = n^(7s/4-1/2) is not 10x below n^(-alpha-1) for n = " +
                         std::to_string(n_values[i]));
    }
  }
  if (!(w_ratio_bound > 0.0)) problems.push_back("w_ratio_bound must be positive");
  if (steps == 0) problems.push_back("steps must be positive");
  if (duhamel_quad_points < 2) problems.push_back("duhamel_quad_points must be >= 2");
  if (!problems.empty()) {
    std::string msg;
    for (const auto& m : problems) msg += (msg.empty() ? "" : "; ") + m;
    throw std::invalid_argument(msg);
  }
}

ExperimentReport periodic_inflation_experiment(const PeriodicInflationParams& p) {
  p.validate();
  ExperimentReport rep;
  rep.experiment = "inflate-periodic";
  rep.param("epsilon", p.epsilon);
  rep.param("s", p.s);
  rep.param("alpha", p.alpha);
  rep.param("steps", static_cast<double>(p.steps));
  try {
    rep.param("select_n", static_cast<double>(select_n(p.epsilon, p.s)));
  } catch (const NOverCeilingError& e) {
    rep.param("select_n", "over ceiling, needs n > " + format_double(e.required_n));
  } catch (const std::invalid_argument&) {
    rep.param("select_n", "undefined for s >= -2");
  }

  const DispersionSpec spec = DispersionSpec::fractional(p.alpha);
  struct Case {
    int n = 0;
    std::size_t N = 0;
    double t = 0, u0_hs = 0, u1_hs = 0, u2_hs = 0, u2_l2 = 0, w_l2 = 0, w_hs = 0, u_hs = 0;
    double mode1 = 0, mode1_pred = 0, closed_vs_duhamel = 0;
    std::string error;
  };
  std::vector<Case> cases(p.n_values.size());

  parallel_for(cases.size(), p.workers, [&](std::size_t i) {
    Case& c = cases[i];
    c.n = p.n_values[i];
    c.N = p.num_modes > 0 ? p.num_modes : default_num_modes(c.n);
    c.t = observation_time(p.s, c.n);
    try {
      const PeriodicGrid grid(c.N, 2.0 * std::numbers::pi);
      const SpectralField u0 = build_two_mode_datum(p.epsilon, p.s, c.n, grid);
      SolverConfig cfg;
      cfg.dt_policy = FixedStep{c.t / static_cast<double>(p.steps)};
      const Trajectory traj = evolve(u0, spec, c.t, cfg);
      if (traj.termination != Termination::reached_t_end) {
        c.error = "n = " + std::to_string(c.n) + ": solver stopped early (" +
                  to_string(traj.termination) + ")";
        return;
      }
      const SpectralField& u = traj.final_state();
      const SpectralField u1 = linear_semigroup(u0, spec, c.t);
      const SpectralField u2 = closed_form_u2(p.epsilon, p.s, c.n, p.alpha, c.t, grid);
      const SpectralField w = u - u1 - u2;
      const SobolevIndex hs{p.s, true}, l2{0.0, true};
      c.u0_hs = sobolev_norm(u0, hs);
      c.u1_hs = sobolev_norm(u1, hs);
      c.u2_hs = sobolev_norm(u2, hs);
      c.u2_l2 = sobolev_norm(u2, l2);
      c.w_l2 = sobolev_norm(w, l2);
      c.w_hs = sobolev_norm(w, hs);
      c.u_hs = sobolev_norm(u, hs);
      c.mode1 = 2.0 * std::abs(u.coefficient(1));
      c.mode1_pred = 0.5 * p.epsilon * p.epsilon * power(c.n, -2.0 * p.s) * c.t;
      const SpectralField ud = duhamel_u2(u0, spec, c.t, p.duhamel_quad_points);
      c.closed_vs_duhamel = sobolev_norm(u2 - ud, l2) / sobolev_norm(ud, l2);
    } catch (const std::exception& e) {
      c.error = "n = " + std::to_string(c.n) + ": " + e.what();
    }
  });

  Table t("periodic_cases",
          {"n", "N", "t_n", "u0_Hs", "u1_Hs", "u1_ratio", "u2_Hs", "u2_L2", "w_L2", "w_Hs",
           "w_bound", "w_ratio", "u_Hs", "mode1_amplitude", "mode1_predicted",
           "closed_vs_duhamel"});
  std::vector<double> ln, lu2, lu2l2, ratios;
  double u1_dev = 0.0, worst_w_ratio = 0.0, worst_mode1 = 0.0, worst_cf = 0.0;
  bool hierarchy = true, triangle = true, ordering = true;
  for (const auto& c : cases) {
    if (!c.error.empty()) {
      rep.errors.push_back(c.error);
      continue;
    }
    const double bound = p.epsilon * p.epsilon * p.epsilon * power(c.n, p.s / 2.0 + 1.0);
    const double ratio = c.w_l2 / bound;
    t.add_row({double(c.n), double(c.N), c.t, c.u0_hs, c.u1_hs, c.u1_hs / c.u0_hs, c.u2_hs,
               c.u2_l2, c.w_l2, c.w_hs, bound, ratio, c.u_hs, c.mode1, c.mode1_pred,
               c.closed_vs_duhamel});
    ln.push_back(std::log(c.n));
    lu2.push_back(std::log(c.u2_hs));
    lu2l2.push_back(std::log(c.u2_l2));
    ratios.push_back(ratio);
    u1_dev = std::max(u1_dev, std::abs(c.u1_hs / c.u0_hs - 1.0));
    worst_w_ratio = std::max(worst_w_ratio, ratio);
    worst_mode1 = std::max(worst_mode1, std::abs(c.mode1 / c.mode1_pred - 1.0));
    worst_cf = std::max(worst_cf, c.closed_vs_duhamel);
    hierarchy = hierarchy && c.w_l2 < c.u2_hs;
    triangle = triangle && c.u_hs >= c.u2_hs - c.u1_hs - c.w_hs;
    ordering = ordering && c.w_hs <= c.w_l2;
  }
  rep.tables.push_back(std::move(t));
  rep.figures.push_back({"u2_norm_vs_n", "||u2(t_n)|| in H^s and L^2 against n", "periodic_cases",
                         "n", {"u2_Hs", "u2_L2"}, true, true, true});
  rep.figures.push_back({"remainder_vs_n", "||w(t_n)||_L2 against eps^3 n^(s/2+1)",
                         "periodic_cases", "n", {"w_L2", "w_bound"}, true, true, true});

  if (ln.size() >= 2) {
    const double target = -p.s / 4.0 - 0.5;
    const LineFit f = fit_line(ln, lu2);
    const double target_l2 = -p.s / 4.0 + 0.5;
    const LineFit f0 = fit_line(ln, lu2l2);
    std::vector<double> lr(ratios.size());
    std::transform(ratios.begin(), ratios.end(), lr.begin(), [](double r) { return std::log(r); });
    const LineFit fr = fit_line(ln, lr);

    Table fits("periodic_fits", {"quantity", "exponent", "target", "residual"});
    fits.add_row({std::string("u2_Hs"), f.slope, target, f.residual});
    fits.add_row({std::string("u2_L2"), f0.slope, target_l2, f0.residual});
    fits.add_row({std::string("w_ratio"), fr.slope, 0.0, fr.residual});
    rep.tables.push_back(std::move(fits));

    rep.check_rel("u2_Hs_exponent", f.slope, target, 0.15,
                  "||u2(t_n)||_{H^s} ~ eps^2 n^(-s/4-1/2)");
    rep.check_rel("u2_L2_exponent", f0.slope, target_l2, 0.15,
                  "||u2(t_n)||_{L^2} ~ eps^2 n^(-2s+1) t_n");
    rep.check_abs("w_ratio_exponent", fr.slope, 0.0, 0.15,
                  "||w(t_n)||_{L^2} / (eps^3 n^(s/2+1)) does not grow with n");
  }
  rep.check_below("u1_norm_ratio_deviation", u1_dev, 1e-10,
                  "free flow preserves ||u1||_{H^s} = ||u0||_{H^s}");
  rep.check_below("w_ratio_max", worst_w_ratio, p.w_ratio_bound,
                  "||w(t_n)||_{L^2} <= C eps^3 n^(s/2+1)");
  rep.check_below("mode1_relative_error", worst_mode1, 0.2,
                  "mode-1 amplitude ~ eps^2 n^(-2s) t / 2");
  rep.check_below("closed_form_vs_duhamel", worst_cf, 1e-8,
                  "closed-form u2 equals the Duhamel integral");
  rep.add_verdict("remainder_below_u2", hierarchy, hierarchy ? 1.0 : 0.0, 1.0, 0.0,
                  "||w||_{L^2} < ||u2||_{H^s} at t_n");
  rep.add_verdict("triangle_inequality", triangle, triangle ? 1.0 : 0.0, 1.0, 0.0,
                  "||u||_{H^s} >= ||u2|| - ||u1|| - ||w||");
  rep.add_verdict("mean_zero_norm_ordering", ordering, ordering ? 1.0 : 0.0, 1.0, 0.0,
                  "||w||_{H^s} <= ||w||_{L^2} for mean-zero w, s < 0");
  return rep;
}

}  // namespace fkdv
