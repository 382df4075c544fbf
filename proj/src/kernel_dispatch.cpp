#include "flagres/kernel.hpp"

#include <cstdlib>
#include <string_view>

namespace flagres::kernel {

#ifdef FLAGRES_HAVE_AVX2
Status run_avx2(const Program&, const double*, const double*, std::size_t, double*, double*, Workspace&);
#endif

const char* to_string(KernelKind k) noexcept { return k == KernelKind::Avx2 ? "avx2" : "scalar"; }

bool kernel_available(KernelKind k) noexcept {
  if (k == KernelKind::Scalar) return true;
#ifdef FLAGRES_HAVE_AVX2
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

KernelKind default_kernel() noexcept {
  if (const char* env = std::getenv("FLAGRES_KERNEL"); env && std::string_view(env) == "scalar")
    return KernelKind::Scalar;
  return kernel_available(KernelKind::Avx2) ? KernelKind::Avx2 : KernelKind::Scalar;
}

BatchFn kernel_function(KernelKind k) {
#ifdef FLAGRES_HAVE_AVX2
  if (k == KernelKind::Avx2) {
    if (!kernel_available(k)) throw Unsupported("AVX2 kernel requested but the CPU lacks AVX2");
    return &run_avx2;
  }
#else
  if (k == KernelKind::Avx2) throw Unsupported("AVX2 kernel not compiled in");
#endif
  return &run_scalar;
}

}  // namespace flagres::kernel
