#include <cstdlib>
#include <string_view>

#include "trendwalk/simd/kernels.hpp"

namespace trendwalk::simd {
namespace {

bool cpu_has_avx2() {
#if defined(TRENDWALK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select() {
  const char* env = std::getenv("TRENDWALK_SIMD");
  const std::string_view want = env ? env : "auto";
  if (want == "scalar") return detail::kScalarTable;
  if (const KernelTable* t = kernel_table(Isa::Avx2); t && (want == "auto" || want == "avx2")) {
    return *t;
  }
  return detail::kScalarTable;
}

}  // namespace

const KernelTable* kernel_table(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return &detail::kScalarTable;
    case Isa::Avx2:
#if defined(TRENDWALK_HAVE_AVX2)
      if (cpu_has_avx2()) return &detail::kAvx2Table;
#endif
      return nullptr;
  }
  return nullptr;
}

const KernelTable& kernels() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace trendwalk::simd
