#include "qgames/qops.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgames {

using std::numbers::pi;

namespace paulis {
QuantumOperator identity() { return QuantumOperator::identity(2); }
QuantumOperator x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
QuantumOperator y() { return {{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}; }
QuantumOperator z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
QuantumOperator hadamard() {
  const double s = 1.0 / std::numbers::sqrt2;
  return {{s, s}, {s, -s}};
}
}  // namespace paulis

QuantumOperator su2(const Su2Params& p) {
  constexpr double slack = 1e-12;
  if (!(p.theta >= -slack && p.theta <= pi + slack)) throw std::invalid_argument("su2: theta outside [0, pi]");
  if (!(std::abs(p.alpha) <= pi + slack)) throw std::invalid_argument("su2: alpha outside [-pi, pi]");
  if (!(std::abs(p.beta) <= pi + slack)) throw std::invalid_argument("su2: beta outside [-pi, pi]");
  const double c = std::cos(p.theta / 2);
  const double s = std::sin(p.theta / 2);
  const cplx i{0.0, 1.0};
  return {{std::polar(c, p.alpha), i * std::polar(s, p.beta)},
          {i * std::polar(s, -p.beta), std::polar(c, -p.alpha)}};
}

QuantumOperator meyer_u(cplx a, cplx b) {
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > kNormTol) throw std::invalid_argument("meyer_u: |a|^2 + |b|^2 != 1");
  return {{a, b}, {std::conj(b), -std::conj(a)}};
}

FlipMatrices flip_matrices() { return {paulis::x(), paulis::identity()}; }

QuantumOperator entangler(const EntanglerSpec& spec) {
  if (spec.n_players == 0) throw std::invalid_argument("entangler: need at least one player");
  if (spec.n_players > 16) throw std::invalid_argument("entangler: explicit matrix limited to 16 qubits");
  const std::size_t dim = std::size_t{1} << spec.n_players;
  const double c = std::cos(spec.gamma / 2);
  const cplx is{0.0, std::sin(spec.gamma / 2)};
  // sigma_x^{(x)N} maps |k> to |~k>.
  std::vector<cplx> e(dim * dim);
  for (std::size_t k = 0; k < dim; ++k) {
    e[k * dim + k] += c;
    e[k * dim + (~k & (dim - 1))] += is;
  }
  return {dim, dim, std::move(e)};
}

QuantumOperator cnot(unsigned control, unsigned target, unsigned n_qubits) {
  if (control >= n_qubits || target >= n_qubits || control == target) throw std::invalid_argument("cnot: bad qubit indices");
  const std::size_t dim = std::size_t{1} << n_qubits;
  const std::size_t cmask = std::size_t{1} << (n_qubits - 1 - control);
  const std::size_t tmask = std::size_t{1} << (n_qubits - 1 - target);
  std::vector<cplx> e(dim * dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const std::size_t out = (k & cmask) ? (k ^ tmask) : k;
    e[out * dim + k] = 1.0;
  }
  return {dim, dim, std::move(e)};
}

QuantumOperator entangler_gate_sequence(unsigned n_players) {
  if (n_players < 2) throw std::invalid_argument("entangler_gate_sequence: need at least two players");
  QuantumOperator u = embed_local(paulis::hadamard(), 0, n_players);
  for (unsigned k = 1; k < n_players; ++k) u = cnot(0, k, n_players) * u;
  return u;
}

}  // namespace qgames
