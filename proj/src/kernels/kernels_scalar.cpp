#include "qgames/kernels.hpp"

namespace qgames::kernels::scalar {

void apply_2x2(std::span<cplx> data, unsigned bit, const Mat2& m) {
  const std::size_t stride = std::size_t{1} << bit;
  const std::size_t n = data.size();
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t j = base; j < base + stride; ++j) {
      const cplx a = data[j];
      const cplx b = data[j + stride];
      data[j] = m.m00 * a + m.m01 * b;
      data[j + stride] = m.m10 * a + m.m11 * b;
    }
  }
}

void axpy(std::span<cplx> dst, double w, std::span<const cplx> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += w * src[i];
}

void abs_squared(std::span<const cplx> x, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::norm(x[i]);
}

}  // namespace qgames::kernels::scalar
