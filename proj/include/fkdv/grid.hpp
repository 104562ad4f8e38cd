#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fkdv {

/// Uniform periodic grid of N points on [origin, origin + period).
///
/// Only the non-negative half of the wavenumber set is stored: the fields
/// living on the grid are real, so the coefficient at -j is the conjugate of
/// the one at j.
class PeriodicGrid {
 public:
  /// Throws std::invalid_argument unless N is even, N >= 8 and period > 0.
  PeriodicGrid(std::size_t num_modes, double period, double origin = 0.0);

  std::size_t num_modes() const { return n_; }
  std::size_t half_size() const { return n_ / 2 + 1; }
  double period() const { return period_; }
  double origin() const { return origin_; }
  double spacing() const { return period_ / static_cast<double>(n_); }
  double x(std::size_t k) const { return origin_ + static_cast<double>(k) * spacing(); }

  /// xi_j = 2 pi j / L for j = 0 .. N/2.
  std::span<const double> wavenumbers() const { return *xi_; }
  double wavenumber(long j) const;
  double max_wavenumber() const { return (*xi_)[n_ / 2]; }

  std::vector<double> points() const;

  bool operator==(const PeriodicGrid& other) const {
    return n_ == other.n_ && period_ == other.period_ && origin_ == other.origin_;
  }

 private:
  std::size_t n_;
  double period_;
  double origin_;
  std::shared_ptr<const std::vector<double>> xi_;
};

}  // namespace fkdv
