#include "fkdv/simd/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#define FKDV_HAVE_NEON_PATH 1
#include <arm_neon.h>
#endif

#include <algorithm>
#include <cmath>
#include <limits>

namespace fkdv::simd {

#ifdef FKDV_HAVE_NEON_PATH
namespace {

// One complex number per register. vmulq/vsubq only (no vfmaq) so rounding
// matches the scalar reference.

void scale_by_real(const double* symbol, const cplx* in, cplx* out, std::size_t n) {
  const auto* src = reinterpret_cast<const double*>(in);
  auto* dst = reinterpret_cast<double*>(out);
  for (std::size_t j = 0; j < n; ++j) {
    vst1q_f64(dst + 2 * j, vmulq_f64(vdupq_n_f64(symbol[j]), vld1q_f64(src + 2 * j)));
  }
}

void mul_complex(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  auto* po = reinterpret_cast<double*>(out);
  for (std::size_t j = 0; j < n; ++j) {
    const float64x2_t va = vld1q_f64(pa + 2 * j);
    const float64x2_t vb = vld1q_f64(pb + 2 * j);
    const float64x2_t re = vmulq_f64(vdupq_laneq_f64(va, 0), vb);     // ar*br ar*bi
    const float64x2_t im = vmulq_f64(vdupq_laneq_f64(va, 1), vextq_f64(vb, vb, 1));  // ai*bi ai*br
    const float64x2_t sign = {-1.0, 1.0};
    const float64x2_t r = vaddq_f64(re, vmulq_f64(im, sign));
    vst1q_f64(po + 2 * j, r);
  }
}

void mul_i_real(const double* xi, double factor, const cplx* in, cplx* out, std::size_t n) {
  const auto* src = reinterpret_cast<const double*>(in);
  auto* dst = reinterpret_cast<double*>(out);
  const float64x2_t sign = {-1.0, 1.0};
  for (std::size_t j = 0; j < n; ++j) {
    const float64x2_t v = vld1q_f64(src + 2 * j);
    const float64x2_t swapped = vextq_f64(v, v, 1);  // im re
    const float64x2_t k = vdupq_n_f64(factor * xi[j]);
    vst1q_f64(dst + 2 * j, vmulq_f64(vmulq_f64(k, swapped), sign));
  }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    vst1q_f64(y + j, vaddq_f64(vld1q_f64(y + j), vmulq_f64(va, vld1q_f64(x + j))));
  }
  for (; j < n; ++j) y[j] += a * x[j];
}

void square(const double* x, double* out, std::size_t n) {
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t v = vld1q_f64(x + j);
    vst1q_f64(out + j, vmulq_f64(v, v));
  }
  for (; j < n; ++j) out[j] = x[j] * x[j];
}

double weighted_norm2(const double* w, const cplx* c, std::size_t n) {
  const auto* pc = reinterpret_cast<const double*>(c);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const float64x2_t v = vld1q_f64(pc + 2 * j);
    acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(w[j]), vmulq_f64(v, v)));
  }
  return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
}

double min_value(const double* x, std::size_t n) {
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) r = std::min(r, x[j]);
  return r;
}

double max_abs(const double* x, std::size_t n) {
  double r = 0.0;
  for (std::size_t j = 0; j < n; ++j) r = std::max(r, std::abs(x[j]));
  return r;
}

}  // namespace

const KernelTable* neon_kernels() {
  static const KernelTable table{
      "neon", scale_by_real, mul_complex, mul_i_real, axpy,
      square, weighted_norm2, min_value,  max_abs,
  };
  return &table;
}

#else

const KernelTable* neon_kernels() { return nullptr; }

#endif

}  // namespace fkdv::simd
