#include "duality/kernels.hpp"

#include "impl.hpp"

namespace duality::kernels {

namespace {

constexpr KernelTable kScalar{Backend::scalar, &scalar::dot, &scalar::weighted_dot,
                              &scalar::weighted_gram};

#if defined(DUALITY_HAVE_AVX2)
constexpr KernelTable kAvx2{Backend::avx2, &avx2::dot, &avx2::weighted_dot,
                            &avx2::weighted_gram};

bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

#if defined(DUALITY_HAVE_NEON)
// Advanced SIMD is mandatory on AArch64.
constexpr KernelTable kNeon{Backend::neon, &neon::dot, &neon::weighted_dot,
                            &neon::weighted_gram};
#endif

const KernelTable& resolve() noexcept {
#if defined(DUALITY_HAVE_AVX2)
  if (cpu_has_avx2()) return kAvx2;
#endif
#if defined(DUALITY_HAVE_NEON)
  return kNeon;
#endif
  return kScalar;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* table_for(Backend b) noexcept {
  switch (b) {
    case Backend::scalar:
      return &kScalar;
    case Backend::avx2:
#if defined(DUALITY_HAVE_AVX2)
      if (cpu_has_avx2()) return &kAvx2;
#endif
      return nullptr;
    case Backend::neon:
#if defined(DUALITY_HAVE_NEON)
      return &kNeon;
#endif
      return nullptr;
  }
  return nullptr;
}

const KernelTable& active() noexcept {
  static const KernelTable& table = resolve();
  return table;
}

std::string_view backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

}  // namespace duality::kernels
