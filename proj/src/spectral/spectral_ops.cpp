#include "fkdv/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fkdv/simd/kernels.hpp"
#include "fkdv/transform.hpp"

namespace fkdv {
namespace {

void check_symbol_size(const SpectralField& field, std::size_t n) {
  if (n != field.grid().half_size()) {
    throw std::invalid_argument("multiplier length must be N/2+1");
  }
}

// sum over j in (-N/2, N/2] of w_j |c_j|^2 given the one-sided storage
double two_sided_sum(std::span<const double> w, std::span<const cplx> c) {
  const auto& k = simd::kernels();
  const std::size_t last = c.size() - 1;
  const double interior = k.weighted_norm2(w.data() + 1, c.data() + 1, last - 1);
  return w[0] * std::norm(c[0]) + 2.0 * interior + w[last] * std::norm(c[last]);
}

double cubic_integral(const SpectralField& field) {
  const auto& grid = field.grid();
  const std::size_t n = grid.num_modes();
  const std::size_t m = 2 * n;
  std::vector<cplx> padded(m / 2 + 1, cplx(0.0, 0.0));
  const auto c = field.coeffs();
  for (std::size_t j = 0; j < n / 2; ++j) padded[j] = c[j];
  padded[n / 2] = 0.5 * c[n / 2];  // Nyquist read as a cosine
  std::vector<double> u(m);
  std::vector<cplx> scratch;
  inverse_transform(padded, u, scratch);
  double sum = 0.0;
  for (double v : u) sum += v * v * v;
  return sum * grid.period() / static_cast<double>(m);
}

}  // namespace

SpectralField apply_multiplier(const SpectralField& field, std::span<const double> symbol) {
  check_symbol_size(field, symbol.size());
  SpectralField out(field.grid());
  simd::kernels().scale_by_real(symbol.data(), field.coeffs().data(), out.coeffs().data(),
                                symbol.size());
  return out;
}

SpectralField apply_multiplier(const SpectralField& field, std::span<const cplx> symbol) {
  check_symbol_size(field, symbol.size());
  std::vector<cplx> c(symbol.size());
  simd::kernels().mul_complex(symbol.data(), field.coeffs().data(), c.data(), c.size());
  c.front() = cplx(c.front().real(), 0.0);
  c.back() = cplx(c.back().real(), 0.0);
  return SpectralField(field.grid(), std::move(c));
}

SpectralField derivative(const SpectralField& field, int order) {
  if (order < 0) throw std::invalid_argument("derivative order must be non-negative");
  SpectralField out = field;
  const auto xi = field.grid().wavenumbers();
  auto c = out.coeffs();
  for (int r = 0; r < order; ++r) {
    simd::kernels().mul_i_real(xi.data(), 1.0, c.data(), c.data(), c.size());
  }
  if (order % 2 == 1) c.back() = cplx(0.0, 0.0);
  return out;
}

SpectralField linear_semigroup(const SpectralField& field, const DispersionSpec& spec, double t) {
  const auto omega = spec.frequency_table(field.grid());
  std::vector<cplx> phase(omega.size());
  for (std::size_t j = 0; j < omega.size(); ++j) phase[j] = std::polar(1.0, -omega[j] * t);
  return apply_multiplier(field, std::span<const cplx>(phase));
}

double sobolev_norm(const SpectralField& field, SobolevIndex idx) {
  const auto& grid = field.grid();
  const auto xi = grid.wavenumbers();
  std::vector<double> w(xi.size());
  if (idx.homogeneous) {
    w[0] = 0.0;
    for (std::size_t j = 1; j < xi.size(); ++j) w[j] = std::pow(xi[j], 2.0 * idx.s);
  } else {
    for (std::size_t j = 0; j < xi.size(); ++j) w[j] = std::pow(1.0 + xi[j] * xi[j], idx.s);
  }
  const double sum = two_sided_sum(w, field.coeffs());
  return std::sqrt(grid.period() / (2.0 * std::numbers::pi) * std::max(sum, 0.0));
}

ConservedQuantities conserved_triplet(const SpectralField& field, const DispersionSpec& spec) {
  const auto& grid = field.grid();
  const double period = grid.period();
  ConservedQuantities q;
  q.mass = period * field.mean();
  const std::vector<double> ones(grid.half_size(), 1.0);
  q.momentum = period * two_sided_sum(ones, field.coeffs());

  const auto m = spec.symbol_table(grid);
  const bool drop_mean = m[0] == 0.0 && field.mean() != 0.0 && spec.is_fractional() &&
                         spec.alpha() < 0.0;
  SpectralField v = field;
  if (drop_mean) {
    v.set_mode(0, 0.0);
    q.mean_excluded = true;
  }
  const double quadratic = 0.5 * period * two_sided_sum(m, v.coeffs());
  q.hamiltonian = quadratic + cubic_integral(v) / 6.0;
  return q;
}

SpectralField dealias_two_thirds(const SpectralField& field) {
  SpectralField out = field;
  const long cutoff = dealias_cutoff(field.grid().num_modes());
  auto c = out.coeffs();
  for (std::size_t j = static_cast<std::size_t>(cutoff) + 1; j < c.size(); ++j) c[j] = 0.0;
  return out;
}

}  // namespace fkdv
