#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fkdv/grid.hpp"

namespace fkdv {

using cplx = std::complex<double>;

/// A real periodic field u(x) = sum_j c_j exp(i xi_j (x - origin)).
///
/// Coefficients for j = 0 .. N/2 are stored; c_{-j} = conj(c_j). The mean
/// c_0 and the Nyquist coefficient c_{N/2} are real.
class SpectralField {
 public:
  /// The zero field.
  explicit SpectralField(PeriodicGrid grid);

  /// Throws std::invalid_argument on a size mismatch or when c_0 / c_{N/2}
  /// carry an imaginary part beyond rounding.
  SpectralField(PeriodicGrid grid, std::vector<cplx> half_coeffs);

  /// Build from the full two-sided spectrum ordered j = -N/2+1 .. N/2.
  /// Rejects input that is not Hermitian symmetric.
  static SpectralField from_full_spectrum(PeriodicGrid grid, std::span<const cplx> full);

  const PeriodicGrid& grid() const { return grid_; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  std::span<cplx> coeffs() { return coeffs_; }

  /// Coefficient at any integer wavenumber index in (-N/2, N/2].
  cplx coefficient(long j) const;
  void set_mode(long j, cplx value);

  double mean() const { return coeffs_[0].real(); }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double c);

 private:
  PeriodicGrid grid_;
  std::vector<cplx> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double c, SpectralField a);

}  // namespace fkdv
