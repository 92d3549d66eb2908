#include "qgames/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qgames::kernels {
namespace {

constexpr KernelTable kScalar{Backend::Scalar, &scalar::apply_2x2, &scalar::axpy, &scalar::abs_squared};

#if defined(QGAMES_HAVE_AVX2)
constexpr KernelTable kAvx2{Backend::Avx2, &avx2::apply_2x2, &avx2::axpy, &avx2::abs_squared};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& choose() {
  if (const char* env = std::getenv("QGAMES_KERNELS"); env != nullptr && std::string(env) == "scalar") {
    return kScalar;
  }
#if defined(QGAMES_HAVE_AVX2)
  if (cpu_has_avx2()) return kAvx2;
#endif
  return kScalar;
}

}  // namespace

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(QGAMES_HAVE_AVX2)
      return cpu_has_avx2();
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument("kernel backend not available: " + std::string(backend_name(b)));
  }
#if defined(QGAMES_HAVE_AVX2)
  if (b == Backend::Avx2) return kAvx2;
#endif
  return kScalar;
}

const KernelTable& active() {
  static const KernelTable& t = choose();
  return t;
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace qgames::kernels
