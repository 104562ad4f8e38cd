#pragma once

#include <span>

namespace fkdv {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square of the residuals.
  double residual = 0.0;
};

/// Ordinary least squares y ~ slope * x + intercept. Needs two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct PlaneFit {
  double coef_a = 0.0;
  double coef_b = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

/// Least squares z ~ coef_a * a + coef_b * b + intercept.
PlaneFit fit_plane(std::span<const double> a, std::span<const double> b,
                   std::span<const double> z);

}  // namespace fkdv
