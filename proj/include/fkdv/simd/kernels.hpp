#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

// Data-parallel inner loops of the spectral pipeline.
//
// Every kernel has a scalar reference implementation; vectorized variants
// (AVX2 on x86-64, NEON on aarch64) are selected once at startup from what
// the CPU reports. Elementwise kernels are bit-identical across variants.
// Reductions may differ in the last few ulps because lanes are summed in a
// different order.
//
// The environment variable FKDV_SIMD=scalar|avx2|neon forces a variant.

namespace fkdv::simd {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;

  // out[j] = symbol[j] * in[j]
  void (*scale_by_real)(const double* symbol, const cplx* in, cplx* out, std::size_t n);

  // out[j] = a[j] * b[j]
  void (*mul_complex)(const cplx* a, const cplx* b, cplx* out, std::size_t n);

  // out[j] = i * factor * xi[j] * in[j]; out may alias in.
  void (*mul_i_real)(const double* xi, double factor, const cplx* in, cplx* out, std::size_t n);

  // y[j] += a * x[j] over doubles.
  void (*axpy)(double a, const double* x, double* y, std::size_t n);

  // out[j] = x[j] * x[j]
  void (*square)(const double* x, double* out, std::size_t n);

  // sum_j w[j] * |c[j]|^2
  double (*weighted_norm2)(const double* w, const cplx* c, std::size_t n);

  double (*min_value)(const double* x, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Best available variant, honoring FKDV_SIMD.
const KernelTable& kernels();

}  // namespace fkdv::simd
