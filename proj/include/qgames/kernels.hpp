#pragma once

// Data-parallel inner loops shared by the state-vector and density-matrix
// paths. Every kernel has a scalar reference implementation; wider variants
// are picked once at startup from what the CPU reports and are tested for
// equivalence against the scalar ones.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qgames::kernels {

using cplx = std::complex<double>;

/// Row-major 2x2 complex matrix {m00, m01, m10, m11}.
struct Mat2 {
  cplx m00, m01, m10, m11;
};

enum class Backend { Scalar, Avx2 };

/// Applies `m` to every amplitude pair that differs only in bit `bit` of the
/// flat index: (x[i0], x[i1]) <- m * (x[i0], x[i1]) with i1 = i0 | (1 << bit).
/// `data.size()` must be a power of two greater than `1 << bit`.
using Apply2x2Fn = void (*)(std::span<cplx> data, unsigned bit, const Mat2& m);

/// dst[i] += w * src[i]
using AxpyFn = void (*)(std::span<cplx> dst, double w, std::span<const cplx> src);

/// out[i] = |x[i]|^2 (out.size() == x.size()).
using AbsSquaredFn = void (*)(std::span<const cplx> x, std::span<double> out);

struct KernelTable {
  Backend backend;
  Apply2x2Fn apply_2x2;
  AxpyFn axpy;
  AbsSquaredFn abs_squared;
};

namespace scalar {
void apply_2x2(std::span<cplx> data, unsigned bit, const Mat2& m);
void axpy(std::span<cplx> dst, double w, std::span<const cplx> src);
void abs_squared(std::span<const cplx> x, std::span<double> out);
}  // namespace scalar

#if defined(QGAMES_HAVE_AVX2)
namespace avx2 {
void apply_2x2(std::span<cplx> data, unsigned bit, const Mat2& m);
void axpy(std::span<cplx> dst, double w, std::span<const cplx> src);
void abs_squared(std::span<const cplx> x, std::span<double> out);
}  // namespace avx2
#endif

bool backend_available(Backend b);

/// Table for a specific backend. Throws std::invalid_argument when the
/// backend was not compiled in or the CPU does not support it.
const KernelTable& table(Backend b);

/// The table in use. Chosen on first call: the widest supported backend,
/// unless QGAMES_KERNELS=scalar is set in the environment.
const KernelTable& active();

std::string_view backend_name(Backend b);

}  // namespace qgames::kernels
