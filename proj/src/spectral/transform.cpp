#include "fkdv/transform.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace fkdv {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface
// is. Plans are created once per size and shared.
class PlanPair {
 public:
  explicit PlanPair(std::size_t n) : n_(n) {
    const int ni = static_cast<int>(n);
    auto* real = fftw_alloc_real(n);
    auto* half = fftw_alloc_complex(n / 2 + 1);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_ = fftw_plan_dft_r2c_1d(ni, real, half, flags);
    backward_ = fftw_plan_dft_c2r_1d(ni, half, real, flags);
    fftw_free(half);
    fftw_free(real);
    if (!forward_ || !backward_) throw std::runtime_error("FFTW planning failed");
  }
  PlanPair(const PlanPair&) = delete;
  PlanPair& operator=(const PlanPair&) = delete;
  ~PlanPair() {
    fftw_destroy_plan(backward_);
    fftw_destroy_plan(forward_);
  }

  void forward(const double* in, cplx* out) const {
    // r2c never writes its input
    fftw_execute_dft_r2c(forward_, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
  }
  void backward(cplx* in, double* out) const {
    fftw_execute_dft_c2r(backward_, reinterpret_cast<fftw_complex*>(in), out);
  }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  fftw_plan forward_{};
  fftw_plan backward_{};
};

const PlanPair& plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<PlanPair>(n);
  return *slot;
}

}  // namespace

void forward_transform(std::span<const double> real, std::span<cplx> half) {
  const std::size_t n = real.size();
  if (half.size() != n / 2 + 1) throw std::invalid_argument("forward_transform: size mismatch");
  plans_for(n).forward(real.data(), half.data());
  const double inv = 1.0 / static_cast<double>(n);
  auto* d = reinterpret_cast<double*>(half.data());
  for (std::size_t j = 0; j < 2 * half.size(); ++j) d[j] *= inv;
}

void inverse_transform(std::span<const cplx> half, std::span<double> real,
                       std::vector<cplx>& scratch) {
  const std::size_t n = real.size();
  if (half.size() != n / 2 + 1) throw std::invalid_argument("inverse_transform: size mismatch");
  scratch.assign(half.begin(), half.end());
  plans_for(n).backward(scratch.data(), real.data());
}

SpectralField to_spectral(std::span<const double> samples, const PeriodicGrid& grid) {
  if (samples.size() != grid.num_modes()) {
    throw std::invalid_argument("to_spectral: expected " + std::to_string(grid.num_modes()) +
                                " samples, got " + std::to_string(samples.size()));
  }
  std::vector<cplx> half(grid.half_size());
  forward_transform(samples, half);
  half.front() = cplx(half.front().real(), 0.0);
  half.back() = cplx(half.back().real(), 0.0);
  return SpectralField(grid, std::move(half));
}

std::vector<double> to_physical(const SpectralField& field) {
  std::vector<double> out(field.grid().num_modes());
  std::vector<cplx> scratch;
  inverse_transform(field.coeffs(), out, scratch);
  return out;
}

}  // namespace fkdv
