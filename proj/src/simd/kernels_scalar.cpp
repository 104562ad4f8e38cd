#include "fkdv/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fkdv::simd {
namespace {

void scale_by_real(const double* symbol, const cplx* in, cplx* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = cplx(symbol[j] * in[j].real(), symbol[j] * in[j].imag());
  }
}

void mul_complex(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double ar = a[j].real(), ai = a[j].imag();
    const double br = b[j].real(), bi = b[j].imag();
    out[j] = cplx(ar * br - ai * bi, ar * bi + ai * br);
  }
}

void mul_i_real(const double* xi, double factor, const cplx* in, cplx* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double k = factor * xi[j];
    const double re = in[j].real(), im = in[j].imag();
    out[j] = cplx(-(k * im), k * re);
  }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) y[j] += a * x[j];
}

void square(const double* x, double* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) out[j] = x[j] * x[j];
}

double weighted_norm2(const double* w, const cplx* c, std::size_t n) {
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sum += w[j] * (c[j].real() * c[j].real() + c[j].imag() * c[j].imag());
  }
  return sum;
}

double min_value(const double* x, std::size_t n) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) m = std::min(m, x[j]);
  return m;
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::abs(x[j]));
  return m;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      "scalar", scale_by_real, mul_complex, mul_i_real, axpy,
      square,   weighted_norm2, min_value,  max_abs,
  };
  return table;
}

}  // namespace fkdv::simd
