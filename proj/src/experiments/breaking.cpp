#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "fkdv/experiments.hpp"
#include "fkdv/fit.hpp"
#include "fkdv/transform.hpp"

namespace fkdv {
namespace {

SpectralField sample_datum(const burgers::InitialDatum& u0, const PeriodicGrid& grid) {
  std::vector<double> x = grid.points();
  for (auto& v : x) v = u0.value(v);
  return to_spectral(x, grid);
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

ExperimentReport breaking_time_experiment(const BreakingParams& p) {
  if (!p.allow_any_alpha && !(p.alpha > -1.0 && p.alpha < -1.0 / 3.0)) {
    throw std::invalid_argument("alpha must lie in (-1, -1/3)");
  }
  if (!(p.delta > 0.0 && p.delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  p.solver.validate();
  const burgers::InitialDatum u0 = p.u0 ? *p.u0 : burgers::InitialDatum::negative_sine(20.0);
  const double m = u0.min_slope();
  if (!(m < 0.0)) throw burgers::NoBlowupError("u0' >= 0 everywhere: no wave breaking");

  ExperimentReport rep;
  rep.experiment = "breaking-time";
  rep.param("datum", u0.name());
  rep.param("alpha", p.alpha);
  rep.param("delta", p.delta);
  rep.param("N", static_cast<double>(p.num_modes));
  rep.param("min_slope", m);

  const double lo = -1.0 / ((1.0 + p.delta) * m);
  const double hi = -1.0 / ((1.0 - p.delta) * (1.0 - p.delta) * m);
  const double T_star = -1.0 / m;
  const PeriodicGrid grid(p.num_modes, u0.extent(), u0.lower());
  const SpectralField v0 = sample_datum(u0, grid);

  SolverConfig cfg = p.solver;
  cfg.detect_breaking = true;
  Table t("breaking", {"run", "alpha", "t_b", "window_lo", "window_hi", "burgers_T_star",
                       "termination", "steps"});

  auto run = [&](const std::string& name, const DispersionSpec& spec) -> std::optional<double> {
    try {
      const Trajectory traj = evolve(v0, spec, 2.0 * hi, cfg);
      const double tb = traj.breaking_time.value_or(std::nan(""));
      t.add_row({name, spec.scale() == 0.0 ? 0.0 : p.alpha, tb, lo, hi, T_star,
                 to_string(traj.termination), static_cast<double>(traj.steps)});
      return traj.breaking_time;
    } catch (const std::exception& e) {
      rep.errors.push_back(name + ": " + e.what());
      return std::nullopt;
    }
  };

  const auto tb = run("dispersive", DispersionSpec::fractional(p.alpha));
  const auto tc = run("control", DispersionSpec::none());
  rep.tables.push_back(std::move(t));

  const double tbv = tb.value_or(std::nan(""));
  rep.add_verdict("breaking_in_window", tb && tbv > lo && tbv < hi, tbv, T_star, 0.0,
                  "t_b in (-1/((1+d) inf u0'), -1/((1-d)^2 inf u0'))");
  const double tcv = tc.value_or(std::nan(""));
  rep.check_rel("control_breaking_time", tcv, T_star, p.control_tolerance,
                "dispersion-free breaking at -1/inf u0'");
  return rep;
}

ExperimentReport burgers_experiment(const BurgersParams& p) {
  const burgers::InitialDatum u0 = p.u0 ? *p.u0 : burgers::InitialDatum::negative_sine();
  ExperimentReport rep;
  rep.experiment = "burgers";
  rep.param("datum", u0.name());
  rep.param("N", static_cast<double>(p.num_modes));
  rep.param("seed", static_cast<double>(p.seed));

  const burgers::BlowupData bd = burgers::blowup_data(u0);
  {
    Table t("blowup_data", {"x_star", "T_star", "slope_min", "second_deriv", "third_deriv", "C1",
                            "C3", "value_at_x_star"});
    t.add_row({bd.x_star, bd.T_star, bd.slope_min, bd.second_deriv, bd.third_deriv, bd.C1, bd.C3,
               bd.value_at_x_star});
    rep.tables.push_back(std::move(t));
    rep.check_abs("C1_equals_inverse_T_star", bd.C1 * bd.T_star, 1.0, 1e-12, "C1 = 1/T*");
    rep.check_abs("second_derivative_vanishes", bd.second_deriv, 0.0, 1e-8, "u0''(x*) = 0");
    rep.add_verdict("C3_positive", bd.C3 > 0.0, bd.C3, 0.0, 0.0, "C3 > 0");
  }

  // Characteristic round trip on random (x, T).
  {
    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> ux(u0.lower(), u0.lower() + u0.extent());
    std::uniform_real_distribution<double> ut(0.0, 0.99 * bd.T_star);
    double worst = 0.0;
    for (std::size_t i = 0; i < p.random_points; ++i) {
      const double x = ux(rng), T = ut(rng);
      const double X = x + u0.value(x) * T;
      worst = std::max(worst, std::abs(burgers::eval_burgers(u0, X, T) - u0.value(x)));
    }
    Table t("round_trip", {"points", "max_error"});
    t.add_row({static_cast<double>(p.random_points), worst});
    rep.tables.push_back(std::move(t));
    rep.check_below("characteristic_round_trip", worst, 1e-10,
                    "u(x + u0(x) T, T) = u0(x) for T < T*");
  }

  // Profile collapse near T*.
  {
    std::vector<double> Y;
    for (int i = -100; i <= 100; ++i) Y.push_back(i / 100.0);
    std::vector<std::string> cols{"Y", "U_cubic"};
    for (double g : p.profile_gaps) cols.push_back("U_measured_gap_" + fmt(g));
    Table t("profile_collapse", cols);
    std::vector<std::vector<burgers::ProfileSample>> prof;
    for (double g : p.profile_gaps) prof.push_back(burgers::rescale_to_profile(u0, bd, bd.T_star - g, Y));
    std::vector<double> mismatch(p.profile_gaps.size(), 0.0);
    for (std::size_t i = 0; i < Y.size(); ++i) {
      const double Uc = burgers::self_similar_profile(Y[i], bd.C1, bd.C3);
      std::vector<Cell> row{Y[i], Uc};
      for (std::size_t k = 0; k < prof.size(); ++k) {
        row.push_back(prof[k][i].U_measured);
        mismatch[k] = std::max(mismatch[k], std::abs(prof[k][i].U_measured - Uc));
      }
      t.add_row(std::move(row));
    }
    rep.tables.push_back(std::move(t));
    std::vector<std::string> ycols(cols.begin() + 1, cols.end());
    rep.figures.push_back({"profile_collapse", "rescaled Burgers profile against the cubic root",
                           "profile_collapse", "Y", ycols, false, false, false});
    Table mm("profile_mismatch", {"gap", "max_mismatch"});
    for (std::size_t k = 0; k < mismatch.size(); ++k) mm.add_row({p.profile_gaps[k], mismatch[k]});
    rep.tables.push_back(std::move(mm));
    if (!mismatch.empty()) {
      rep.check_below("profile_mismatch_first_gap", mismatch[0], p.profile_tolerance,
                      "U_measured -> U solving C1 U + C3 U^3 = Y as T -> T*");
    }
    for (std::size_t k = 1; k < mismatch.size(); ++k) {
      rep.add_verdict("profile_mismatch_shrinks_" + std::to_string(k),
                      mismatch[k] < mismatch[k - 1], mismatch[k], mismatch[k - 1], 0.0,
                      "profile mismatch decreases as T -> T*");
    }
  }

  // Norm growth against (T* - T)^(5/4 - 3s/2).
  if (!p.gaps.empty() && !p.s_values.empty()) {
    std::vector<double> T;
    std::vector<double> gaps = p.gaps;
    std::sort(gaps.begin(), gaps.end(), std::greater<>());
    for (double g : gaps) T.push_back(bd.T_star - g);
    const PeriodicGrid grid(p.num_modes, u0.extent(), u0.lower());
    std::vector<std::string> cols{"gap"};
    for (double s : p.s_values) cols.push_back("Hs_norm_s_" + fmt(s));
    Table t("norm_growth", cols);
    Table fits("norm_growth_fit", {"s", "exponent", "target", "residual"});
    std::vector<burgers::NormGrowthFit> results;
    try {
      // One field per time serves every s.
      std::vector<SpectralField> fields;
      const double required = std::pow(gaps.back(), 1.5) / 8.0;
      if (!(grid.spacing() < required)) {
        throw burgers::ResolutionError("grid spacing " + fmt(grid.spacing()) +
                                       " does not resolve the focusing width " + fmt(required));
      }
      for (double Ti : T) fields.push_back(burgers::burgers_field(u0, Ti, grid, p.workers));
      std::vector<double> lg;
      for (double g : gaps) lg.push_back(std::log(g));
      std::vector<std::vector<double>> norms(p.s_values.size());
      for (std::size_t j = 0; j < p.s_values.size(); ++j) {
        std::vector<double> ln;
        for (const auto& f : fields) {
          norms[j].push_back(sobolev_norm(f, {p.s_values[j], true}));
          ln.push_back(std::log(norms[j].back()));
        }
        const LineFit f = fit_line(lg, ln);
        const double target = 1.25 - 1.5 * p.s_values[j];
        fits.add_row({p.s_values[j], f.slope, target, f.residual});
        rep.check_rel("norm_growth_exponent_s_" + fmt(p.s_values[j]), f.slope, target,
                      p.exponent_tolerance, "||u(T)||_{H^s dot} ~ (T* - T)^(5/4 - 3s/2)");
      }
      for (std::size_t i = 0; i < gaps.size(); ++i) {
        std::vector<Cell> row{gaps[i]};
        for (const auto& n : norms) row.push_back(n[i]);
        t.add_row(std::move(row));
      }
    } catch (const std::exception& e) {
      rep.errors.push_back(std::string("norm growth: ") + e.what());
    }
    rep.tables.push_back(std::move(t));
    rep.tables.push_back(std::move(fits));
    std::vector<std::string> ycols(cols.begin() + 1, cols.end());
    rep.figures.push_back({"norm_growth", "homogeneous H^s norm against T* - T", "norm_growth", "gap",
                           ycols, true, true, true});
  }

  // Sup norms of u_X and u_XX, parametrized by the characteristic foot.
  {
    const std::vector<double> gaps{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
    Table t("derivative_growth", {"gap", "sup_u_x", "sup_u_xx"});
    std::vector<double> lg, l1, l2;
    const std::size_t M = 1 << 16;
    for (double g : gaps) {
      const double T = bd.T_star - g;
      double s1 = 0.0, s2 = 0.0;
      // Dense around x* where the supremum sits, plus a uniform sweep.
      for (std::size_t i = 0; i <= M; ++i) {
        const double r = -1.0 + 2.0 * static_cast<double>(i) / M;
        for (double x : {bd.x_star + r * 10.0 * std::sqrt(g), u0.lower() + (0.5 + 0.5 * r) * u0.extent()}) {
          const double d = 1.0 + u0.d1(x) * T;
          s1 = std::max(s1, std::abs(u0.d1(x) / d));
          s2 = std::max(s2, std::abs(u0.d2(x) / (d * d * d)));
        }
      }
      t.add_row({g, s1, s2});
      lg.push_back(std::log(g / bd.T_star));
      l1.push_back(std::log(s1));
      l2.push_back(std::log(s2));
    }
    rep.tables.push_back(std::move(t));
    const LineFit f1 = fit_line(lg, l1), f2 = fit_line(lg, l2);
    rep.add_verdict("sup_u_x_growth_bounded", -f1.slope <= 2.0 * 1.15, -f1.slope, 2.0, 0.15,
                    "||u_X(T)||_inf <= C (1 - T/T*)^-2");
    rep.add_verdict("sup_u_xx_growth_bounded", -f2.slope <= 3.0 * 1.15, -f2.slope, 3.0, 0.15,
                    "||u_XX(T)||_inf <= C (1 - T/T*)^-3");
  }
  return rep;
}

}  // namespace fkdv
