#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fkdv/burgers.hpp"

namespace fkdv::burgers {
namespace {

constexpr int kScanPoints = 4096;

// Sixth-order central difference stencils (offsets -4 .. 4).
constexpr double kFirst[] = {0.0, -1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60, 0.0};
constexpr double kSecond[] = {0.0, 1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90, 0.0};
constexpr double kThird[] = {-7.0 / 240, 3.0 / 10, -169.0 / 120, 61.0 / 30, 0.0,
                             -61.0 / 30, 169.0 / 120, -3.0 / 10, 7.0 / 240};

InitialDatum::Fn stencil(InitialDatum::Fn f, const double (&w)[9], double h, int order) {
  const double scale = std::pow(h, -order);
  return [f = std::move(f), &w, h, scale](double x) {
    double acc = 0.0;
    for (int i = 0; i < 9; ++i) {
      if (w[i] != 0.0) acc += w[i] * f(x + (i - 4) * h);
    }
    return acc * scale;
  };
}

}  // namespace

InitialDatum::InitialDatum(std::string name, Fn value, Fn d1, Fn d2, Fn d3, Domain domain)
    : name_(std::move(name)),
      value_(std::move(value)),
      d1_(std::move(d1)),
      d2_(std::move(d2)),
      d3_(std::move(d3)),
      domain_(domain) {
  const double a = lower();
  const double len = extent();
  if (!(len > 0.0)) throw std::invalid_argument("datum domain must have positive extent");
  const double h = len / kScanPoints;

  int best = 0;
  double best_slope = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kScanPoints; ++i) {
    const double x = a + i * h;
    sup_abs_ = std::max(sup_abs_, std::abs(value_(x)));
    const double s = d1_(x);
    if (s < best_slope) {
      best_slope = s;
      best = i;
    }
  }

  // Refine the minimum of u0' by bisection on the sign change of u0'',
  // then polish with Newton using u0'''.
  double x = a + best * h;
  double lo = x - h, hi = x + h;
  if (d2_(lo) < 0.0 && d2_(hi) > 0.0) {
    while (hi - lo > 1e-6 * std::max(1.0, std::abs(x))) {
      const double mid = 0.5 * (lo + hi);
      (d2_(mid) < 0.0 ? lo : hi) = mid;
    }
    x = 0.5 * (lo + hi);
    for (int it = 0; it < 50; ++it) {
      const double f3 = d3_(x);
      if (!(f3 > 0.0)) break;
      const double dx = d2_(x) / f3;
      const double next = std::clamp(x - dx, lo, hi);
      const bool converged = std::abs(next - x) < 1e-13 * std::max(1.0, std::abs(x));
      x = next;
      if (converged) break;
    }
  }
  argmin_slope_ = x;
  min_slope_ = std::min(d1_(x), best_slope);
  if (d1_(x) > best_slope) argmin_slope_ = a + best * h;
  // The true peak can fall between scan nodes.
  sup_abs_ *= 1.02;
}

double InitialDatum::extent() const {
  return std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, RealLine>) {
          return 2.0 * d.half_width;
        } else {
          return d.period;
        }
      },
      domain_);
}

double InitialDatum::lower() const {
  return std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, RealLine>) {
          return -d.half_width;
        } else {
          return d.origin;
        }
      },
      domain_);
}

double InitialDatum::blowup_time() const {
  return min_slope_ < 0.0 ? -1.0 / min_slope_ : std::numeric_limits<double>::infinity();
}

InitialDatum InitialDatum::negative_sine(double amplitude, double wavenumber) {
  const double a = amplitude, k = wavenumber;
  const double period = 2.0 * std::numbers::pi / k;
  return InitialDatum(
      "negative_sine", [a, k](double x) { return -a * std::sin(k * x); },
      [a, k](double x) { return -a * k * std::cos(k * x); },
      [a, k](double x) { return a * k * k * std::sin(k * x); },
      [a, k](double x) { return a * k * k * k * std::cos(k * x); },
      Torus{period, -0.5 * period});
}

InitialDatum InitialDatum::gaussian_derivative(double amplitude, double half_width) {
  const double a = amplitude;
  return InitialDatum(
      "gaussian_derivative", [a](double x) { return -a * x * std::exp(-x * x); },
      [a](double x) { return -a * (1.0 - 2.0 * x * x) * std::exp(-x * x); },
      [a](double x) { return -a * (4.0 * x * x * x - 6.0 * x) * std::exp(-x * x); },
      [a](double x) {
        const double x2 = x * x;
        return -a * (-8.0 * x2 * x2 + 24.0 * x2 - 6.0) * std::exp(-x2);
      },
      RealLine{half_width});
}

InitialDatum InitialDatum::two_mode(double amplitude, int n) {
  const double a = amplitude, p = n, q = n + 1.0;
  return InitialDatum(
      "two_mode", [=](double x) { return a * (std::cos(p * x) + std::cos(q * x)); },
      [=](double x) { return -a * (p * std::sin(p * x) + q * std::sin(q * x)); },
      [=](double x) { return -a * (p * p * std::cos(p * x) + q * q * std::cos(q * x)); },
      [=](double x) { return a * (p * p * p * std::sin(p * x) + q * q * q * std::sin(q * x)); },
      Torus{2.0 * std::numbers::pi, -std::numbers::pi});
}

InitialDatum InitialDatum::from_function(std::string name, Fn value, Domain domain) {
  const double len = std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, RealLine>) {
          return 2.0 * d.half_width;
        } else {
          return d.period;
        }
      },
      domain);
  const double h = len * 1e-4;
  auto d1 = stencil(value, kFirst, h, 1);
  auto d2 = stencil(value, kSecond, h, 2);
  auto d3 = stencil(value, kThird, h, 3);
  return InitialDatum(std::move(name), std::move(value), std::move(d1), std::move(d2),
                      std::move(d3), domain);
}

}  // namespace fkdv::burgers
