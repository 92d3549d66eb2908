#pragma once

#include <numbers>
#include <utility>

#include "qgames/qstate.hpp"

namespace qgames {

/// Angles of a single-qubit strategy
///   U(theta, alpha, beta) = [[ e^{i alpha} cos(theta/2),  i e^{i beta} sin(theta/2) ],
///                            [ i e^{-i beta} sin(theta/2), e^{-i alpha} cos(theta/2) ]]
/// with theta in [0, pi] and alpha, beta in [-pi, pi].
struct Su2Params {
  double theta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  friend bool operator==(const Su2Params&, const Su2Params&) = default;
};

struct EntanglerSpec {
  unsigned n_players = 2;
  double gamma = std::numbers::pi / 2;
};

namespace paulis {
QuantumOperator identity();
QuantumOperator x();
QuantumOperator y();
QuantumOperator z();
QuantumOperator hadamard();
}  // namespace paulis

/// Throws std::invalid_argument for angles outside their ranges.
QuantumOperator su2(const Su2Params& params);

/// Meyer's [[a, b], [conj(b), -conj(a)]]; |a|^2 + |b|^2 must be 1.
QuantumOperator meyer_u(cplx a, cplx b);

struct FlipMatrices {
  QuantumOperator flip;     // F
  QuantumOperator no_flip;  // N
};

/// F and N in the basis {H, T}.
FlipMatrices flip_matrices();

/// J(gamma) = cos(gamma/2) I^{(x)N} + i sin(gamma/2) sigma_x^{(x)N}.
QuantumOperator entangler(const EntanglerSpec& spec);

/// Hadamard on qubit 0 followed by CNOT(0 -> k) for k = 1..N-1. Produces
/// (|0..0> + |1..1>)/sqrt(2) from |0..0>; differs from entangler() by the
/// phase on |1..1>, so it is not used by the game pipeline.
QuantumOperator entangler_gate_sequence(unsigned n_players);

/// CNOT on an n-qubit register.
QuantumOperator cnot(unsigned control, unsigned target, unsigned n_qubits);

}  // namespace qgames
