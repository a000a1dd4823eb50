#include <atomic>
#include <cstdlib>
#include <string_view>

#include "vmdtex/simd/kernels.hpp"

namespace vmdtex::simd {

#if defined(VMDTEX_HAVE_AVX2)
const KernelTable& avx2_kernel_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(VMDTEX_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable* initial_table() {
  const char* env = std::getenv("VMDTEX_SIMD");
  const std::string_view request = env ? env : "";
  if (request == "scalar") return &scalar_kernels();
  if (const KernelTable* avx2 = avx2_kernels()) return avx2;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& kernels() { return *active().load(std::memory_order_acquire); }

bool select_isa(Isa isa) {
  const KernelTable* table = isa == Isa::scalar ? &scalar_kernels() : avx2_kernels();
  if (table == nullptr) return false;
  active().store(table, std::memory_order_release);
  return true;
}

Isa active_isa() { return &kernels() == &scalar_kernels() ? Isa::scalar : Isa::avx2; }

}  // namespace vmdtex::simd
