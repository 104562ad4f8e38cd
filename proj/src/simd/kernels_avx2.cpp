#include "fkdv/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define FKDV_HAVE_AVX2_PATH 1
#include <immintrin.h>
#endif

#include <algorithm>
#include <cmath>
#include <limits>

namespace fkdv::simd {

#ifdef FKDV_HAVE_AVX2_PATH
namespace {

// Compiled per function with target("avx2") only: no FMA, so products and
// sums round exactly like the scalar reference.
#define FKDV_AVX2 __attribute__((target("avx2")))

// Two complex numbers per register: [re0 im0 re1 im1].
FKDV_AVX2 inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d ar = _mm256_movedup_pd(a);          // re re
  const __m256d ai = _mm256_permute_pd(a, 0xF);     // im im
  const __m256d bswap = _mm256_permute_pd(b, 0x5);  // im re
  return _mm256_addsub_pd(_mm256_mul_pd(ar, b), _mm256_mul_pd(ai, bswap));
}

FKDV_AVX2 void scale_by_real(const double* symbol, const cplx* in, cplx* out, std::size_t n) {
  const auto* src = reinterpret_cast<const double*>(in);
  auto* dst = reinterpret_cast<double*>(out);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    // [s0 s0 s1 s1]
    const __m128d s = _mm_loadu_pd(symbol + j);
    const __m256d ss = _mm256_permute4x64_pd(_mm256_castpd128_pd256(s), 0x50);
    _mm256_storeu_pd(dst + 2 * j, _mm256_mul_pd(ss, _mm256_loadu_pd(src + 2 * j)));
  }
  for (; j < n; ++j) out[j] = cplx(symbol[j] * in[j].real(), symbol[j] * in[j].imag());
}

FKDV_AVX2 void mul_complex(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  auto* po = reinterpret_cast<double*>(out);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    _mm256_storeu_pd(po + 2 * j, cmul(_mm256_loadu_pd(pa + 2 * j), _mm256_loadu_pd(pb + 2 * j)));
  }
  for (; j < n; ++j) {
    const double ar = a[j].real(), ai = a[j].imag();
    const double br = b[j].real(), bi = b[j].imag();
    out[j] = cplx(ar * br - ai * bi, ar * bi + ai * br);
  }
}

FKDV_AVX2 void mul_i_real(const double* xi, double factor, const cplx* in, cplx* out,
                          std::size_t n) {
  const auto* src = reinterpret_cast<const double*>(in);
  auto* dst = reinterpret_cast<double*>(out);
  const __m256d f = _mm256_set1_pd(factor);
  const __m256d flip = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);  // negate the new real part
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m128d x = _mm_loadu_pd(xi + j);
    const __m256d k = _mm256_mul_pd(f, _mm256_permute4x64_pd(_mm256_castpd128_pd256(x), 0x50));
    const __m256d v = _mm256_permute_pd(_mm256_loadu_pd(src + 2 * j), 0x5);  // im re
    _mm256_storeu_pd(dst + 2 * j, _mm256_xor_pd(_mm256_mul_pd(k, v), flip));
  }
  for (; j < n; ++j) {
    const double k = factor * xi[j];
    const double re = in[j].real(), im = in[j].imag();
    out[j] = cplx(-(k * im), k * re);
  }
}

FKDV_AVX2 void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + j));
    _mm256_storeu_pd(y + j, _mm256_add_pd(_mm256_loadu_pd(y + j), prod));
  }
  for (; j < n; ++j) y[j] += a * x[j];
}

FKDV_AVX2 void square(const double* x, double* out, std::size_t n) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d v = _mm256_loadu_pd(x + j);
    _mm256_storeu_pd(out + j, _mm256_mul_pd(v, v));
  }
  for (; j < n; ++j) out[j] = x[j] * x[j];
}

FKDV_AVX2 double weighted_norm2(const double* w, const cplx* c, std::size_t n) {
  const auto* pc = reinterpret_cast<const double*>(c);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d v = _mm256_loadu_pd(pc + 2 * j);
    const __m256d sq = _mm256_mul_pd(v, v);
    const __m256d mag = _mm256_hadd_pd(sq, sq);  // [|c0|^2 |c0|^2 |c1|^2 |c1|^2]
    const __m128d ww = _mm_loadu_pd(w + j);
    const __m256d wv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(ww), 0x50);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(wv, mag));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  // each product was accumulated twice (once per duplicated lane)
  double sum = 0.5 * ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3]));
  for (; j < n; ++j) {
    sum += w[j] * (c[j].real() * c[j].real() + c[j].imag() * c[j].imag());
  }
  return sum;
}

FKDV_AVX2 double min_value(const double* x, std::size_t n) {
  __m256d m = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) m = _mm256_min_pd(_mm256_loadu_pd(x + j), m);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
  for (; j < n; ++j) r = std::min(r, x[j]);
  return r;
}

FKDV_AVX2 double max_abs(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) m = _mm256_max_pd(_mm256_andnot_pd(sign, _mm256_loadu_pd(x + j)), m);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; j < n; ++j) r = std::max(r, std::abs(x[j]));
  return r;
}

#undef FKDV_AVX2

}  // namespace

const KernelTable* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2");
  static const KernelTable table{
      "avx2", scale_by_real, mul_complex, mul_i_real, axpy,
      square, weighted_norm2, min_value,  max_abs,
  };
  return supported ? &table : nullptr;
}

#else

const KernelTable* avx2_kernels() { return nullptr; }

#endif

}  // namespace fkdv::simd
