#pragma once

// In-place helpers on raw amplitude / density buffers, used by the pipeline
// and channel code to avoid reallocating per gate.

#include <span>

#include "qgames/kernels.hpp"
#include "qgames/qstate.hpp"

namespace qgames::detail {

kernels::Mat2 to_mat2(const QuantumOperator& op);

/// psi <- op_qubit psi for an n-qubit amplitude buffer.
void apply_local_inplace(std::span<cplx> psi, unsigned n_qubits, const kernels::Mat2& op, unsigned qubit);

/// rho <- op_qubit rho op_qubit^dagger for an n-qubit row-major density buffer.
void conjugate_local_inplace(std::span<cplx> rho, unsigned n_qubits, const kernels::Mat2& op, unsigned qubit);

}  // namespace qgames::detail
