#include "fkdv/fit.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace fkdv {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw std::invalid_argument("fit_line: need >= 2 paired samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: abscissae are all equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.slope * x[i] + f.intercept);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

PlaneFit fit_plane(std::span<const double> a, std::span<const double> b,
                   std::span<const double> z) {
  const std::size_t n = a.size();
  if (b.size() != n || z.size() != n || n < 3) {
    throw std::invalid_argument("fit_plane: need >= 3 samples");
  }
  // normal equations on centered data
  double ma = 0, mb = 0, mz = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
    mz += z[i];
  }
  ma /= n;
  mb /= n;
  mz /= n;
  double saa = 0, sab = 0, sbb = 0, saz = 0, sbz = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma, db = b[i] - mb, dz = z[i] - mz;
    saa += da * da;
    sab += da * db;
    sbb += db * db;
    saz += da * dz;
    sbz += db * dz;
  }
  const double det = saa * sbb - sab * sab;
  if (std::abs(det) <= 1e-14 * saa * sbb) throw std::invalid_argument("fit_plane: degenerate design");
  PlaneFit f;
  f.coef_a = (saz * sbb - sbz * sab) / det;
  f.coef_b = (sbz * saa - saz * sab) / det;
  f.intercept = mz - f.coef_a * ma - f.coef_b * mb;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = z[i] - (f.coef_a * a[i] + f.coef_b * b[i] + f.intercept);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

}  // namespace fkdv
