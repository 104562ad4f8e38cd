#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fkdv/quadrature.hpp"
#include "fkdv/simd/kernels.hpp"
#include "fkdv/solver.hpp"
#include "fkdv/transform.hpp"

namespace fkdv {

SpectralField duhamel_u2(const SpectralField& u0, const DispersionSpec& spec, double t,
                         int quad_points) {
  if (quad_points < 2) throw std::invalid_argument("duhamel_u2: quad_points must be >= 2");
  if (!(t >= 0.0)) throw std::invalid_argument("duhamel_u2: t must be non-negative");
  const auto& grid = u0.grid();
  SpectralField out(grid);
  if (t == 0.0) return out;

  const int order = std::min(quad_points, 16);
  const int panels = (quad_points + order - 1) / order;
  const QuadratureRule rule = composite_gauss_legendre(0.0, t, order, panels);

  const auto& k = simd::kernels();
  const auto omega = spec.frequency_table(grid);
  const auto xi = grid.wavenumbers();
  const std::size_t m = grid.half_size();
  const std::size_t cutoff = static_cast<std::size_t>(dealias_cutoff(grid.num_modes()));
  const auto c0 = u0.coeffs();

  std::vector<cplx> u1(m), g(m), phase(m);
  std::vector<double> phys(grid.num_modes());
  std::vector<cplx> scratch;
  auto acc = out.coeffs();

  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double tau = rule.nodes[q];
    for (std::size_t j = 0; j < m; ++j) phase[j] = std::polar(1.0, -omega[j] * tau);
    k.mul_complex(phase.data(), c0.data(), u1.data(), m);
    u1.back() = 0.0;

    // g = (u1^2 / 2)_x = u1 u1_x
    inverse_transform(u1, phys, scratch);
    k.square(phys.data(), phys.data(), phys.size());
    forward_transform(phys, g);
    k.mul_i_real(xi.data(), 0.5, g.data(), g.data(), m);
    for (std::size_t j = cutoff + 1; j < m; ++j) g[j] = 0.0;

    // acc -= w * S(t - tau) g
    for (std::size_t j = 0; j < m; ++j) phase[j] = std::polar(1.0, -omega[j] * (t - tau));
    k.mul_complex(phase.data(), g.data(), g.data(), m);
    k.axpy(-rule.weights[q], reinterpret_cast<const double*>(g.data()),
           reinterpret_cast<double*>(acc.data()), 2 * m);
  }
  acc.front() = 0.0;
  acc.back() = 0.0;
  return out;
}

}  // namespace fkdv
