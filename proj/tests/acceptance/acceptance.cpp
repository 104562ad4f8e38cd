// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned here.
// Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fkdv/burgers.hpp"
#include "fkdv/experiments.hpp"
#include "fkdv/fit.hpp"
#include "fkdv/spectral_ops.hpp"
#include "fkdv/transform.hpp"

using namespace fkdv;
using std::numbers::pi;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const Table& table(const ExperimentReport& rep, const std::string& name) {
  const Table* t = rep.find_table(name);
  if (!t) throw std::runtime_error(rep.experiment + " did not produce table " + name);
  return *t;
}

// Criterion 1: drifts of mass, momentum and Hamiltonian.
Outcome conservation() {
  double worst_m = 0.0, worst_p = 0.0, worst_h = 0.0;
  for (double alpha : {-1.0, -0.5, 1.0, 2.0}) {
    SimulateParams p;
    p.alpha = alpha;
    p.num_modes = 1024;
    p.datum = "negative_sine";
    // -sin x breaks at t = 1; run to half of that.
    p.t_end = 0.5 * burgers::InitialDatum::negative_sine().blowup_time();
    p.solver.dt_policy = FixedStep{1e-4};
    p.record_stride = 1000;
    const auto rep = simulate_experiment(p);
    const auto drift = table(rep, "drift").column("max_relative_drift");
    worst_m = std::max(worst_m, drift.at(0));
    worst_p = std::max(worst_p, drift.at(1));
    worst_h = std::max(worst_h, drift.at(2));
  }
  const bool ok = worst_m < 1e-8 && worst_p < 1e-8 && worst_h < 1e-6;
  return {ok, "alpha in {-1,-1/2,1,2}, N=1024, t=0.5: max drift mass " + fmt("%.2e", worst_m) + " momentum " +
                  fmt("%.2e", worst_p) + " (< 1e-8), hamiltonian " + fmt("%.2e", worst_h) + " (< 1e-6)"};
}

// Criterion 2: characteristics round trip and blowup data.
Outcome burgers_exactness() {
  const auto u0 = burgers::InitialDatum::negative_sine();
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> ux(-pi, pi), ut(0.0, 0.999);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = ux(rng), T = ut(rng);
    const double X = x + u0.value(x) * T;
    worst = std::max(worst, std::abs(std::remainder(burgers::characteristic_foot(u0, X, T) - x, 2.0 * pi)));
  }
  const auto bd = burgers::blowup_data(u0);
  const double data_err = std::max({std::abs(bd.x_star), std::abs(bd.T_star - 1.0), std::abs(bd.C1 - 1.0),
                                    std::abs(bd.C3 - 1.0 / 6.0)});
  return {worst < 1e-10 && data_err < 1e-8, "round-trip error " + fmt("%.2e", worst) + " (< 1e-10) on 1000 points; " +
                                                "blowup data error " + fmt("%.2e", data_err) + " (< 1e-8)"};
}

// Criterion 3: rescaled profile against the cubic root.
Outcome profile_collapse() {
  const auto u0 = burgers::InitialDatum::negative_sine();
  const auto bd = burgers::blowup_data(u0);
  std::vector<double> Y;
  for (int k = -200; k <= 200; ++k) Y.push_back(k / 200.0);
  auto mismatch = [&](double gap) {
    double m = 0.0;
    for (const auto& s : burgers::rescale_to_profile(u0, bd, bd.T_star - gap, Y)) {
      m = std::max(m, std::abs(s.U_measured - burgers::self_similar_profile(s.Y, bd.C1, bd.C3)));
    }
    return m;
  };
  const double m3 = mismatch(1e-3), m4 = mismatch(1e-4);
  return {m3 < 0.05 && m4 < m3, "max |U_measured - U_cubic| over |Y| <= 1: " + fmt("%.3e", m3) +
                                    " at gap 1e-3 (< 0.05), " + fmt("%.3e", m4) + " at gap 1e-4 (must be smaller)"};
}

// Criterion 4: homogeneous norm growth exponent near the blowup time.
Outcome norm_growth() {
  const auto u0 = burgers::InitialDatum::negative_sine();
  std::vector<double> T;
  for (double gap : {1e-1, 5e-2, 2.5e-2, 1.25e-2, 6.25e-3, 3.125e-3, 1e-3}) T.push_back(1.0 - gap);
  // Spacing below (1e-3)^(3/2) / 8 as the resolution gate requires.
  const PeriodicGrid grid(std::size_t{1} << 21, 2.0 * pi, -pi);
  bool ok = true;
  std::string detail;
  for (double s : {0.9, 1.0}) {
    const auto fit = burgers::norm_growth_fit(u0, s, T, grid);
    const double target = 1.25 - 1.5 * s;
    const bool pass = std::abs(fit.exponent - target) <= 0.10 * std::abs(target);
    ok = ok && pass;
    detail += (detail.empty() ? "" : "; ") + std::string("s=") + fmt("%.1f", s) + ": slope " +
              fmt("%.4f", fit.exponent) + " vs " + fmt("%.4f", target) + " (10%)";
  }
  return {ok, detail};
}

// Criterion 5: H^2 distance to the Burgers oracle as nu -> 0.
Outcome zero_dispersion() {
  ZeroDispersionParams p;
  p.alpha = -1.0;
  p.k = 2;
  p.T_obs = 0.4;
  p.nu_values = {1e-1, 1e-2, 1e-3, 1e-4};
  const auto rep = zero_dispersion_experiment(p);
  const Table& t = table(rep, "zero_dispersion");
  const auto nu = t.column("nu"), err = t.column("Hk_error"), in_fit = t.column("in_fit_window");
  std::vector<double> lx, ly;
  bool monotone = true;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (in_fit[i] != 1.0) continue;
    if (!lx.empty() && !(err[i] < std::exp(ly.back()))) monotone = false;
    lx.push_back(std::log(nu[i]));
    ly.push_back(std::log(err[i]));
  }
  if (lx.size() < 2) return {false, "fewer than two nu values inside the fit window"};
  const double slope = fit_line(lx, ly).slope;
  const double target = -p.alpha / 2.0;
  return {monotone && std::abs(slope - target) <= 0.1,
          std::string("monotone ") + (monotone ? "yes" : "no") + ", fitted nu-exponent " + fmt("%.4f", slope) +
              " vs " + fmt("%.2f", target) + " (+-0.1)"};
}

// Criterion 6: closed-form second iterate against Duhamel quadrature.
Outcome closed_form() {
  double worst = 0.0;
  for (double alpha : {-0.5, 0.0, 1.0}) {
    for (int n : {8, 16, 32}) {
      for (double t : {1e-4, 1e-3}) {
        const PeriodicGrid g(default_num_modes(n), 2.0 * pi);
        const double eps = 0.1, s = -2.5;
        const auto oracle = duhamel_u2(build_two_mode_datum(eps, s, n, g), DispersionSpec::fractional(alpha), t, 64);
        const auto closed = closed_form_u2(eps, s, n, alpha, t, g);
        worst = std::max(worst, sobolev_norm(closed - oracle, {0.0, false}) / sobolev_norm(oracle, {0.0, false}));
      }
    }
  }
  return {worst < 1e-8, "max relative L2 discrepancy over 18 cases " + fmt("%.2e", worst) + " (< 1e-8)"};
}

// Criterion 7: periodic inflation rates.
Outcome periodic_rates() {
  PeriodicInflationParams p;
  p.epsilon = 0.1;
  p.s = -2.5;
  p.alpha = 1.0;
  p.n_values = {16, 32, 64, 128};
  const auto rep = periodic_inflation_experiment(p);
  if (!rep.errors.empty()) return {false, "case failure: " + rep.errors.front()};
  const Table& t = table(rep, "periodic_cases");
  const auto n = t.column("n"), u2 = t.column("u2_Hs"), ratio = t.column("u1_ratio"), w = t.column("w_ratio");
  std::vector<double> ln, lu, lw;
  double ratio_dev = 0.0, w_max = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    ln.push_back(std::log(n[i]));
    lu.push_back(std::log(u2[i]));
    lw.push_back(std::log(w[i]));
    ratio_dev = std::max(ratio_dev, std::abs(ratio[i] - 1.0));
    w_max = std::max(w_max, w[i]);
  }
  const double slope = fit_line(ln, lu).slope, target = -p.s / 4.0 - 0.5;
  const double w_slope = fit_line(ln, lw).slope;
  // "Bounded by a constant": the ratio stays below C = 2 and shows no growth in n.
  const bool ok = std::abs(slope - target) <= 0.15 * target && ratio_dev < 1e-10 && w_max < 2.0 &&
                  std::abs(w_slope) <= 0.15;
  return {ok, "u2 H^s n-exponent " + fmt("%.4f", slope) + " vs " + fmt("%.3f", target) + " (15%); |u1 ratio - 1| " +
                  fmt("%.1e", ratio_dev) + " (< 1e-10); w ratio max " + fmt("%.3f", w_max) + " (< 2), n-exponent " +
                  fmt("%.3f", w_slope) + " (|.| <= 0.15)"};
}

// Criterion 8: detected breaking time inside the window.
Outcome breaking_window() {
  BreakingParams p;
  p.alpha = -0.5;
  p.delta = 0.2;
  p.num_modes = 2048;
  p.u0 = burgers::InitialDatum::negative_sine(20.0);
  const auto rep = breaking_time_experiment(p);
  const Table& t = table(rep, "breaking");
  const double tb = t.column("t_b").at(0);
  // Window from min u0' = -20 and delta, computed here independently.
  const double m = -20.0, d = 0.2;
  const double lo = -1.0 / ((1.0 + d) * m), hi = -1.0 / ((1.0 - d) * (1.0 - d) * m);
  return {tb > lo && tb < hi, "t_b " + fmt("%.5f", tb) + " in (" + fmt("%.5f", lo) + ", " + fmt("%.6f", hi) + ")"};
}

// Criterion 9: scaling and Galilean symmetries.
Outcome symmetries() {
  SymmetryParams p;
  p.lambda = 2.0;
  p.omega = 1.0;
  const auto rep = symmetry_experiment(p);
  const auto d = table(rep, "symmetry").column("relative_L2_discrepancy");
  return {d.at(0) < 1e-6 && d.at(1) < 1e-6,
          "scaling (lambda=2) " + fmt("%.2e", d.at(0)) + ", Galilean (omega=1) " + fmt("%.2e", d.at(1)) + " (< 1e-6)"};
}

// Criterion 10: initial H^s norm of the scaled line datum.
Outcome initial_norm_scaling() {
  const double alpha = -0.5, s = 0.9;
  const auto u0 = burgers::InitialDatum::gaussian_derivative();
  const PeriodicGrid grid(32768, 16.0, -8.0);
  std::vector<double> la, lr, ln;
  for (double lambda : {1.0, 0.5, 0.25, 0.125}) {
    for (double rho : {1.0 / 16, 1.0 / 32, 1.0 / 64, 1.0 / 128}) {
      const auto f = build_scaled_datum(u0, lambda, rho * lambda, alpha, grid);
      la.push_back(std::log(lambda));
      lr.push_back(std::log(rho));
      ln.push_back(std::log(sobolev_norm(f, {s, false})));
    }
  }
  const auto fit = fit_plane(la, lr, ln);
  const double ta = alpha, tr = 0.5 - s;
  const bool ok = std::abs(fit.coef_a - ta) <= 0.05 * std::abs(ta) && std::abs(fit.coef_b - tr) <= 0.05 * std::abs(tr);
  return {ok, "lambda exponent " + fmt("%.4f", fit.coef_a) + " vs " + fmt("%.2f", ta) + ", nu/lambda exponent " +
                  fmt("%.4f", fit.coef_b) + " vs " + fmt("%.2f", tr) + " (5%)"};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "conservation suite", 30, conservation},
      {2, "Burgers oracle exactness", 5, burgers_exactness},
      {3, "self-similar collapse", 10, profile_collapse},
      {4, "norm growth exponent near blowup", 60, norm_growth},
      {5, "zero-dispersion closeness rate", 300, zero_dispersion},
      {6, "closed-form u2 vs Duhamel", 30, closed_form},
      {7, "periodic inflation rates", 600, periodic_rates},
      {8, "breaking-time window", 120, breaking_window},
      {9, "symmetry suite", 60, symmetries},
      {10, "initial-norm scaling on the line", 60, initial_norm_scaling},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = o.passed && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s; %.2f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.budget_seconds, in_time ? "" : " OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%zu of %zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
