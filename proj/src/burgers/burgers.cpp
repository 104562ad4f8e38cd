#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "fkdv/burgers.hpp"
#include "fkdv/fit.hpp"
#include "fkdv/spectral_ops.hpp"
#include "fkdv/transform.hpp"

namespace fkdv::burgers {
namespace {

constexpr double kBisectWidth = 1e-6;
constexpr double kNewtonTol = 1e-12;

void check_time(const InitialDatum& u0, double T) {
  if (!(T >= 0.0) || !std::isfinite(T)) {
    throw std::invalid_argument("Burgers evaluation time must be finite and non-negative");
  }
  if (T >= u0.blowup_time()) {
    throw MultivaluedRegionError("T = " + std::to_string(T) + " is at or past the blowup time " +
                                 std::to_string(u0.blowup_time()));
  }
}

// Newton on f(x) = x + u0(x) T - X kept inside [lo, hi], where f(lo) <= 0 <= f(hi).
// Falls back to bisection whenever a Newton step leaves the bracket.
double safeguarded_newton(const InitialDatum& u0, double X, double T, double lo, double hi,
                          double x) {
  for (int it = 0; it < 200; ++it) {
    const double f = x + u0.value(x) * T - X;
    if (f == 0.0) return x;
    (f < 0.0 ? lo : hi) = x;
    const double fp = 1.0 + u0.d1(x) * T;
    double next = x - f / fp;
    if (!(next > lo && next < hi) || !(fp > 0.0)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    if (step <= kNewtonTol * std::max(1.0, std::abs(x)) || hi - lo <= kNewtonTol * std::max(1.0, std::abs(x))) {
      return x;
    }
  }
  throw RootFindError("characteristic foot did not converge", lo, hi);
}

double bracket_halfwidth(const InitialDatum& u0, double T) { return u0.sup_abs() * T + 1e-12; }

double foot_from_scratch(const InitialDatum& u0, double X, double T) {
  const double w = bracket_halfwidth(u0, T);
  double lo = X - w, hi = X + w;
  auto f = [&](double x) { return x + u0.value(x) * T - X; };
  if (f(lo) > 0.0 || f(hi) < 0.0) throw RootFindError("characteristic foot not bracketed", lo, hi);
  while (hi - lo > kBisectWidth * std::max(1.0, std::abs(X))) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return safeguarded_newton(u0, X, T, lo, hi, 0.5 * (lo + hi));
}

unsigned resolve_workers(unsigned workers) {
  if (workers > 0) return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

BlowupData blowup_data(const InitialDatum& u0) {
  const double m = u0.min_slope();
  if (!(m < 0.0)) throw NoBlowupError("u0' >= 0 everywhere: no finite-time blowup");
  const double x = u0.argmin_slope();
  BlowupData bd{};
  bd.x_star = x;
  bd.slope_min = m;
  bd.T_star = -1.0 / m;
  bd.second_deriv = u0.d2(x);
  bd.third_deriv = u0.d3(x);
  bd.value_at_x_star = u0.value(x);
  if (!(bd.third_deriv > 0.0)) {
    throw DegenerateBlowupError("u0''' <= 0 at the slope minimum: self-similar analysis unavailable");
  }
  bd.C1 = -m;
  bd.C3 = -bd.third_deriv / (6.0 * m);
  return bd;
}

double characteristic_foot(const InitialDatum& u0, double X, double T) {
  check_time(u0, T);
  if (T == 0.0) return X;
  return foot_from_scratch(u0, X, T);
}

double eval_burgers(const InitialDatum& u0, double X, double T) {
  return u0.value(characteristic_foot(u0, X, T));
}

double eval_burgers_derivative(const InitialDatum& u0, double X, double T) {
  const double x = characteristic_foot(u0, X, T);
  const double s = u0.d1(x);
  return s / (1.0 + s * T);
}

std::vector<double> sample_burgers(const InitialDatum& u0, double T, std::span<const double> X,
                                   unsigned workers) {
  check_time(u0, T);
  std::vector<double> out(X.size());
  if (X.empty()) return out;
  if (T == 0.0) {
    for (std::size_t i = 0; i < X.size(); ++i) out[i] = u0.value(X[i]);
    return out;
  }

  std::vector<std::size_t> order(X.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return X[a] < X[b]; });

  // The foot is increasing in X, so within a sorted run the previous foot is a
  // lower bracket and a first-order predictor for the next one.
  const double w = bracket_halfwidth(u0, T);
  auto run = [&](std::size_t begin, std::size_t end) {
    double prev_X = 0.0, prev_x = 0.0;
    bool warm = false;
    for (std::size_t r = begin; r < end; ++r) {
      const std::size_t i = order[r];
      const double Xi = X[i];
      double x;
      if (!warm) {
        x = foot_from_scratch(u0, Xi, T);
      } else {
        const double lo = prev_x;
        const double hi = std::max(prev_x, Xi + w);
        const double guess = prev_x + (Xi - prev_X) / (1.0 + u0.d1(prev_x) * T);
        x = safeguarded_newton(u0, Xi, T, lo, hi, std::clamp(guess, lo, hi));
      }
      out[i] = u0.value(x);
      prev_X = Xi;
      prev_x = x;
      warm = true;
    }
  };

  const unsigned k = std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(1, X.size() / 4096));
  if (k <= 1) {
    run(0, X.size());
    return out;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (X.size() + k - 1) / k;
  for (unsigned t = 0; t < k; ++t) {
    const std::size_t b = t * chunk, e = std::min(X.size(), b + chunk);
    if (b < e) pool.emplace_back(run, b, e);
  }
  for (auto& th : pool) th.join();
  return out;
}

SpectralField burgers_field(const InitialDatum& u0, double T, const PeriodicGrid& grid,
                            unsigned workers) {
  const auto x = grid.points();
  return to_spectral(sample_burgers(u0, T, x, workers), grid);
}

double self_similar_profile(double Y, double C1, double C3) {
  if (!(C1 > 0.0 && C3 > 0.0)) {
    throw std::invalid_argument("self_similar_profile requires C1 > 0 and C3 > 0");
  }
  if (Y == 0.0) return 0.0;
  // Hyperbolic form of the single real root of C3 U^3 + C1 U - Y = 0; it is
  // free of the cancellation in Cardano's formula.
  const double r = std::sqrt(C1 / (3.0 * C3));
  double U = 2.0 * r * std::sinh(std::asinh(1.5 * Y / C1 * std::sqrt(3.0 * C3 / C1)) / 3.0);
  for (int it = 0; it < 3; ++it) {
    const double f = C3 * U * U * U + C1 * U - Y;
    const double fp = 3.0 * C3 * U * U + C1;
    U -= f / fp;
  }
  return U;
}

std::vector<ProfileSample> rescale_to_profile(const InitialDatum& u0, const BlowupData& bd,
                                              double T, std::span<const double> Y_grid) {
  const double tau = bd.T_star - T;
  if (!(tau > 0.0)) throw MultivaluedRegionError("rescale_to_profile requires T < T*");
  // Centre of the focusing region moves with the characteristic through x*.
  const double Xc = bd.x_star + bd.value_at_x_star * T;
  const double width = std::pow(tau, 1.5);
  std::vector<double> X(Y_grid.size());
  for (std::size_t i = 0; i < X.size(); ++i) X[i] = Xc + Y_grid[i] * width;
  const auto u = sample_burgers(u0, T, X, 1);
  std::vector<ProfileSample> out(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    out[i] = {Y_grid[i], -bd.T_star * (u[i] - bd.value_at_x_star) / std::sqrt(tau)};
  }
  return out;
}

NormGrowthFit norm_growth_fit(const InitialDatum& u0, double s, std::span<const double> T_samples,
                              const PeriodicGrid& grid, unsigned workers) {
  if (T_samples.size() < 2) throw std::invalid_argument("norm_growth_fit needs at least two times");
  const double T_star = u0.blowup_time();
  if (!std::isfinite(T_star)) throw NoBlowupError("u0' >= 0 everywhere: no finite-time blowup");
  for (std::size_t i = 0; i < T_samples.size(); ++i) {
    if (!(T_samples[i] < T_star) || !(T_samples[i] >= 0.0)) {
      throw std::invalid_argument("norm_growth_fit: every sample time must lie in [0, T*)");
    }
    if (i > 0 && !(T_samples[i] > T_samples[i - 1])) {
      throw std::invalid_argument("norm_growth_fit: sample times must be increasing");
    }
  }
  const double gap_min = T_star - T_samples.back();
  const double required = std::pow(gap_min, 1.5) / 8.0;
  if (!(grid.spacing() < required)) {
    const double n_needed = std::ceil(grid.period() / required);
    throw ResolutionError("grid spacing " + std::to_string(grid.spacing()) +
                          " does not resolve the focusing width; need spacing < " +
                          std::to_string(required) + " (N > " + std::to_string(n_needed) + ")");
  }

  NormGrowthFit fit{};
  std::vector<double> lg, ln;
  for (double T : T_samples) {
    const SpectralField u = burgers_field(u0, T, grid, workers);
    const double norm = sobolev_norm(u, {s, true});
    fit.gaps.push_back(T_star - T);
    fit.norms.push_back(norm);
    lg.push_back(std::log(T_star - T));
    ln.push_back(std::log(norm));
  }
  const LineFit line = fit_line(lg, ln);
  fit.exponent = line.slope;
  fit.log_log_residual = line.residual;
  return fit;
}

}  // namespace fkdv::burgers
