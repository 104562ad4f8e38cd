#pragma once

#include <span>
#include <vector>

#include "fkdv/spectral_field.hpp"

namespace fkdv {

/// Coefficients c_j = (1/N) sum_k samples_k exp(-i xi_j (x_k - origin)).
/// Throws std::invalid_argument when samples.size() != N.
SpectralField to_spectral(std::span<const double> samples, const PeriodicGrid& grid);

/// Inverse of to_spectral.
std::vector<double> to_physical(const SpectralField& field);

// Allocation-free variants for hot loops. `half` has N/2+1 entries,
// `real` has N entries; `scratch` is resized as needed.
void forward_transform(std::span<const double> real, std::span<cplx> half);
void inverse_transform(std::span<const cplx> half, std::span<double> real,
                       std::vector<cplx>& scratch);

}  // namespace fkdv
