#pragma once

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <vector>

#include "qgames/qops.hpp"
#include "qgames/qstate.hpp"

namespace qgames::testing {

inline std::vector<cplx> random_complex(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

/// A A^dagger / tr for Gaussian A: full-rank random state.
inline DensityMatrix random_density(std::mt19937_64& rng, unsigned n_qubits) {
  const std::size_t d = std::size_t{1} << n_qubits;
  const auto a = random_complex(rng, d * d);
  std::vector<cplx> e(d * d);
  cplx tr = 0.0;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += a[r * d + k] * std::conj(a[c * d + k]);
      e[r * d + c] = s;
    }
  for (std::size_t i = 0; i < d; ++i) tr += e[i * d + i];
  for (auto& x : e) x /= tr.real();
  // Symmetrize away round-off.
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = r; c < d; ++c) {
      const cplx avg = 0.5 * (e[r * d + c] + std::conj(e[c * d + r]));
      e[r * d + c] = avg;
      e[c * d + r] = std::conj(avg);
    }
  return DensityMatrix(d, std::move(e));
}

/// Haar-ish random unitary from the QR decomposition of a Gaussian matrix.
inline QuantumOperator random_unitary(std::mt19937_64& rng, std::size_t d) {
  const auto a = random_complex(rng, d * d);
  Eigen::MatrixXcd m(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m(r, c) = a[r * d + c];
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  Eigen::MatrixXcd q = qr.householderQ();
  std::vector<cplx> e(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) e[r * d + c] = q(r, c);
  return {d, d, std::move(e)};
}

inline Su2Params random_su2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> th(0.0, std::numbers::pi), ph(-std::numbers::pi, std::numbers::pi);
  return {th(rng), ph(rng), ph(rng)};
}

inline double max_abs_diff(const DensityMatrix& a, const DensityMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

}  // namespace qgames::testing
