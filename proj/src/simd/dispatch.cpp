#include <cstdlib>
#include <string_view>

#include "fkdv/simd/kernels.hpp"

namespace fkdv::simd {
namespace {

const KernelTable& select() {
  const char* forced = std::getenv("FKDV_SIMD");
  const std::string_view want = forced ? forced : "auto";
  if (want == "scalar") return scalar_kernels();
  if (want == "avx2" && avx2_kernels()) return *avx2_kernels();
  if (want == "neon" && neon_kernels()) return *neon_kernels();
  if (const auto* t = avx2_kernels()) return *t;
  if (const auto* t = neon_kernels()) return *t;
  return scalar_kernels();
}

}  // namespace

const KernelTable& kernels() {
  static const KernelTable& chosen = select();
  return chosen;
}

}  // namespace fkdv::simd
