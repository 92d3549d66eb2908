#include "qgames/kernels.hpp"

#include <immintrin.h>

namespace qgames::kernels::avx2 {
namespace {

// Two packed complex doubles [re0, im0, re1, im1] times a broadcast scalar.
inline __m256d cmul_scalar(__m256d x, __m256d re, __m256d im) {
  const __m256d swapped = _mm256_permute_pd(x, 0b0101);
  return _mm256_fmaddsub_pd(x, re, _mm256_mul_pd(swapped, im));
}

// Lane-wise complex product of two packed pairs.
inline __m256d cmul(__m256d x, __m256d y) {
  const __m256d y_re = _mm256_movedup_pd(y);
  const __m256d y_im = _mm256_permute_pd(y, 0b1111);
  const __m256d swapped = _mm256_permute_pd(x, 0b0101);
  return _mm256_fmaddsub_pd(x, y_re, _mm256_mul_pd(swapped, y_im));
}

inline __m256d load(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

void apply_adjacent(std::span<cplx> data, const Mat2& m) {
  // Pairs are (2k, 2k+1): one register holds [a, b].
  const __m256d c_a = _mm256_setr_pd(m.m00.real(), m.m00.imag(), m.m10.real(), m.m10.imag());
  const __m256d c_b = _mm256_setr_pd(m.m01.real(), m.m01.imag(), m.m11.real(), m.m11.imag());
  for (std::size_t j = 0; j < data.size(); j += 2) {
    const __m256d v = load(&data[j]);
    const __m256d aa = _mm256_permute2f128_pd(v, v, 0x00);
    const __m256d bb = _mm256_permute2f128_pd(v, v, 0x11);
    store(&data[j], _mm256_add_pd(cmul(aa, c_a), cmul(bb, c_b)));
  }
}

}  // namespace

void apply_2x2(std::span<cplx> data, unsigned bit, const Mat2& m) {
  if (bit == 0) {
    apply_adjacent(data, m);
    return;
  }
  const std::size_t stride = std::size_t{1} << bit;
  const std::size_t n = data.size();
  const __m256d r00 = _mm256_set1_pd(m.m00.real()), i00 = _mm256_set1_pd(m.m00.imag());
  const __m256d r01 = _mm256_set1_pd(m.m01.real()), i01 = _mm256_set1_pd(m.m01.imag());
  const __m256d r10 = _mm256_set1_pd(m.m10.real()), i10 = _mm256_set1_pd(m.m10.imag());
  const __m256d r11 = _mm256_set1_pd(m.m11.real()), i11 = _mm256_set1_pd(m.m11.imag());
  for (std::size_t base = 0; base < n; base += 2 * stride) {
    for (std::size_t j = base; j < base + stride; j += 2) {
      const __m256d a = load(&data[j]);
      const __m256d b = load(&data[j + stride]);
      store(&data[j], _mm256_add_pd(cmul_scalar(a, r00, i00), cmul_scalar(b, r01, i01)));
      store(&data[j + stride], _mm256_add_pd(cmul_scalar(a, r10, i10), cmul_scalar(b, r11, i11)));
    }
  }
}

void axpy(std::span<cplx> dst, double w, std::span<const cplx> src) {
  auto* d = reinterpret_cast<double*>(dst.data());
  const auto* s = reinterpret_cast<const double*>(src.data());
  const std::size_t n = 2 * dst.size();
  const __m256d wv = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(d + i, _mm256_fmadd_pd(wv, _mm256_loadu_pd(s + i), _mm256_loadu_pd(d + i)));
  }
  for (; i < n; ++i) d[i] += w * s[i];
}

void abs_squared(std::span<const cplx> x, std::span<double> out) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d lo = load(&x[i]);
    const __m256d hi = load(&x[i + 2]);
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(lo, lo), _mm256_mul_pd(hi, hi));
    _mm256_storeu_pd(&out[i], _mm256_permute4x64_pd(h, 0b11011000));
  }
  for (; i < n; ++i) out[i] = std::norm(x[i]);
}

}  // namespace qgames::kernels::avx2
