#include "fkdv/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fkdv {
namespace {

// Imaginary parts of the self-conjugate modes below this (relative to the
// largest coefficient) are treated as rounding and dropped.
constexpr double kHermitianTol = 1e-12;

double scale_of(std::span<const cplx> c) {
  double m = 0.0;
  for (const auto& z : c) m = std::max(m, std::abs(z));
  return std::max(m, 1e-300);
}

void require_same_grid(const PeriodicGrid& a, const PeriodicGrid& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

}  // namespace

SpectralField::SpectralField(PeriodicGrid grid)
    : grid_(std::move(grid)), coeffs_(grid_.half_size(), cplx(0.0, 0.0)) {}

SpectralField::SpectralField(PeriodicGrid grid, std::vector<cplx> half_coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(half_coeffs)) {
  if (coeffs_.size() != grid_.half_size()) {
    throw std::invalid_argument("coefficient count does not match grid (expected N/2+1)");
  }
  const double tol = kHermitianTol * scale_of(coeffs_);
  auto& c0 = coeffs_.front();
  auto& cn = coeffs_.back();
  if (std::abs(c0.imag()) > tol || std::abs(cn.imag()) > tol) {
    throw std::invalid_argument("mean and Nyquist coefficients must be real");
  }
  c0 = cplx(c0.real(), 0.0);
  cn = cplx(cn.real(), 0.0);
}

SpectralField SpectralField::from_full_spectrum(PeriodicGrid grid, std::span<const cplx> full) {
  const std::size_t n = grid.num_modes();
  if (full.size() != n) throw std::invalid_argument("full spectrum must have N entries");
  const long half = static_cast<long>(n / 2);
  // full[i] holds j = i - half + 1
  auto at = [&](long j) { return full[static_cast<std::size_t>(j + half - 1)]; };
  const double tol = kHermitianTol * scale_of(full);
  for (long j = 1; j < half; ++j) {
    if (std::abs(at(-j) - std::conj(at(j))) > tol) {
      throw std::invalid_argument("spectrum is not Hermitian symmetric at j = " +
                                  std::to_string(j));
    }
  }
  std::vector<cplx> half_coeffs(n / 2 + 1);
  for (long j = 0; j <= half; ++j) half_coeffs[static_cast<std::size_t>(j)] = at(j);
  return SpectralField(std::move(grid), std::move(half_coeffs));
}

cplx SpectralField::coefficient(long j) const {
  const long half = static_cast<long>(grid_.num_modes() / 2);
  if (j <= -half || j > half) throw std::out_of_range("mode index outside (-N/2, N/2]");
  return j >= 0 ? coeffs_[static_cast<std::size_t>(j)]
                : std::conj(coeffs_[static_cast<std::size_t>(-j)]);
}

void SpectralField::set_mode(long j, cplx value) {
  const long half = static_cast<long>(grid_.num_modes() / 2);
  if (j <= -half || j > half) throw std::out_of_range("mode index outside (-N/2, N/2]");
  if (j == 0 || j == half) value = cplx(value.real(), 0.0);
  if (j >= 0) {
    coeffs_[static_cast<std::size_t>(j)] = value;
  } else {
    coeffs_[static_cast<std::size_t>(-j)] = std::conj(value);
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= other.coeffs_[j];
  return *this;
}

SpectralField& SpectralField::operator*=(double c) {
  for (auto& z : coeffs_) z *= c;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double c, SpectralField a) { return a *= c; }

}  // namespace fkdv
