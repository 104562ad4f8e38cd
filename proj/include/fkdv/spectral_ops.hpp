#pragma once

#include <span>

#include "fkdv/dispersion.hpp"
#include "fkdv/spectral_field.hpp"

namespace fkdv {

struct SobolevIndex {
  double s = 0.0;
  bool homogeneous = true;
};

struct ConservedQuantities {
  double hamiltonian = 0.0;
  double momentum = 0.0;
  double mass = 0.0;
  /// Set when the symbol vanishes at xi = 0 (alpha < 0) and the field has a
  /// nonzero mean: the Hamiltonian is then evaluated on u - mean(u).
  bool mean_excluded = false;
};

/// c_j -> symbol_j c_j for a real even symbol given on j = 0 .. N/2.
SpectralField apply_multiplier(const SpectralField& field, std::span<const double> symbol);

/// Complex symbol with symbol(-xi) = conj(symbol(xi)), given on j = 0 .. N/2.
/// The output is projected back onto real fields (imaginary parts at j = 0
/// and j = N/2 are dropped).
SpectralField apply_multiplier(const SpectralField& field, std::span<const cplx> symbol);

/// d^order/dx^order. The Nyquist mode is zeroed for odd orders.
SpectralField derivative(const SpectralField& field, int order = 1);

/// Free dispersive flow: c_j -> exp(-i m(xi_j) xi_j t) c_j. The Nyquist
/// coefficient keeps only its real part, so S(t) S(-t) is the identity only on
/// fields without a Nyquist component.
SpectralField linear_semigroup(const SpectralField& field, const DispersionSpec& spec, double t);

/// Homogeneous: (L/2pi) sum_{j != 0} |xi_j|^{2s} |c_j|^2.
/// Inhomogeneous: (L/2pi) sum_j (1 + xi_j^2)^s |c_j|^2.
/// Returns the square root. Sums run over j in (-N/2, N/2].
double sobolev_norm(const SpectralField& field, SobolevIndex idx);

/// Mass int u, momentum int u^2, Hamiltonian int (u M u / 2 + u^3 / 6), all
/// over one period. The cubic term is integrated exactly on a 2x padded grid.
ConservedQuantities conserved_triplet(const SpectralField& field, const DispersionSpec& spec);

/// Zero all modes with |j| > N/3.
SpectralField dealias_two_thirds(const SpectralField& field);

/// Largest retained index under the two-thirds rule.
inline long dealias_cutoff(std::size_t num_modes) { return static_cast<long>(num_modes / 3); }

}  // namespace fkdv
