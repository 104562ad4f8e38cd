#include "fkdv/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fkdv {

PeriodicGrid::PeriodicGrid(std::size_t num_modes, double period, double origin)
    : n_(num_modes), period_(period), origin_(origin) {
  if (n_ < 8 || n_ % 2 != 0) {
    throw std::invalid_argument("grid size must be even and >= 8, got " + std::to_string(n_));
  }
  if (!(period_ > 0.0) || !std::isfinite(period_)) {
    throw std::invalid_argument("grid period must be positive and finite");
  }
  auto xi = std::make_shared<std::vector<double>>(n_ / 2 + 1);
  const double base = 2.0 * std::numbers::pi / period_;
  for (std::size_t j = 0; j < xi->size(); ++j) (*xi)[j] = base * static_cast<double>(j);
  xi_ = std::move(xi);
}

double PeriodicGrid::wavenumber(long j) const {
  const long half = static_cast<long>(n_ / 2);
  if (j <= -half || j > half) throw std::out_of_range("wavenumber index outside (-N/2, N/2]");
  return j >= 0 ? (*xi_)[static_cast<std::size_t>(j)] : -(*xi_)[static_cast<std::size_t>(-j)];
}

std::vector<double> PeriodicGrid::points() const {
  std::vector<double> xs(n_);
  for (std::size_t k = 0; k < n_; ++k) xs[k] = x(k);
  return xs;
}

}  // namespace fkdv
