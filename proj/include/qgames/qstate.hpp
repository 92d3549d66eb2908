#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgames {

using cplx = std::complex<double>;

/// Tolerance for norms, traces and probability sums.
inline constexpr double kNormTol = 1e-12;
/// Tolerance for unitarity, channel completeness and Hermiticity residuals.
inline constexpr double kUnitaryTol = 1e-10;
/// Lower bound accepted for the smallest eigenvalue of a density matrix.
inline constexpr double kPsdTol = 1e-10;

/// Raised when a core invariant (trace, positivity, unitarity) is violated.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense complex matrix, row-major. Used for unitaries, projectors and
/// Kraus elements alike.
class QuantumOperator {
 public:
  QuantumOperator(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  QuantumOperator(std::initializer_list<std::initializer_list<cplx>> rows);

  static QuantumOperator identity(std::size_t dim);
  static QuantumOperator zeros(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  cplx operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<const cplx> entries() const { return entries_; }

  QuantumOperator adjoint() const;
  QuantumOperator conj() const;

  /// max |(U U^dagger - I)_ij|; infinite for non-square operators.
  double unitarity_residual() const;
  bool is_unitary(double tol = kUnitaryTol) const { return unitarity_residual() <= tol; }

  friend QuantumOperator operator*(const QuantumOperator& a, const QuantumOperator& b);
  friend QuantumOperator operator+(const QuantumOperator& a, const QuantumOperator& b);
  friend QuantumOperator operator-(const QuantumOperator& a, const QuantumOperator& b);
  friend QuantumOperator operator*(cplx s, const QuantumOperator& a);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> entries_;
};

/// Largest entrywise magnitude of a - b.
double max_abs_diff(const QuantumOperator& a, const QuantumOperator& b);

/// True when a = e^{i phi} b for some phi, within `tol` entrywise.
bool equal_up_to_phase(const QuantumOperator& a, const QuantumOperator& b, double tol = kUnitaryTol);

/// Normalized pure state of `n_sites` subsystems, each of dimension
/// `local_dim`. Amplitudes are indexed big-endian: site 0 is the most
/// significant digit.
class StateVector {
 public:
  /// Throws std::invalid_argument unless the amplitudes have unit norm
  /// (within kNormTol) and their count is a power of `local_dim`.
  explicit StateVector(std::vector<cplx> amplitudes, unsigned local_dim = 2);

  /// Computational basis state |index> of `n_sites` sites.
  static StateVector basis(unsigned n_sites, std::uint64_t index, unsigned local_dim = 2);

  std::size_t dim() const { return amplitudes_.size(); }
  unsigned local_dim() const { return local_dim_; }
  unsigned n_sites() const { return n_sites_; }
  cplx operator[](std::size_t i) const { return amplitudes_[i]; }
  std::span<const cplx> amplitudes() const { return amplitudes_; }

 private:
  struct Unchecked {};
  StateVector(Unchecked, std::vector<cplx> amplitudes, unsigned local_dim, unsigned n_sites);

  std::vector<cplx> amplitudes_;
  unsigned local_dim_;
  unsigned n_sites_;

  friend StateVector tensor(const StateVector&, const StateVector&);
  friend StateVector apply(const QuantumOperator&, const StateVector&);
  friend StateVector apply_local(const StateVector&, const QuantumOperator&, unsigned);
};

/// Hermitian, unit-trace, positive semidefinite operator on n qubits (or on
/// any dimension when built from a state of higher local dimension).
class DensityMatrix {
 public:
  /// Validating constructor: Hermitian within kUnitaryTol, trace 1 within
  /// kNormTol, smallest eigenvalue >= -kPsdTol. Throws std::invalid_argument.
  DensityMatrix(std::size_t dim, std::vector<cplx> entries);

  /// Wraps entries produced by a trusted, invariant-preserving operation.
  /// Use check_density() to validate afterwards if needed.
  static DensityMatrix unchecked(std::size_t dim, std::vector<cplx> entries);

  std::size_t dim() const { return dim_; }
  /// log2(dim) when dim is a power of two, otherwise 0.
  unsigned n_qubits() const { return n_qubits_; }
  cplx operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
  std::span<const cplx> entries() const { return entries_; }

  cplx trace() const;
  double hermiticity_residual() const;

 private:
  struct Unchecked {};
  DensityMatrix(Unchecked, std::size_t dim, std::vector<cplx> entries);

  std::size_t dim_;
  unsigned n_qubits_;
  std::vector<cplx> entries_;
};

/// Eigenvalues of a Hermitian matrix in ascending order.
std::vector<double> eigenvalues(const DensityMatrix& rho);
double min_eigenvalue(const DensityMatrix& rho);

/// Throws NumericalError naming `stage` if rho violates a density invariant.
void check_density(const DensityMatrix& rho, const std::string& stage);

/// Kronecker products. Operand `a` occupies the most significant index.
QuantumOperator tensor(const QuantumOperator& a, const QuantumOperator& b);
StateVector tensor(const StateVector& a, const StateVector& b);
/// Left fold of tensor over `ops`.
QuantumOperator tensor_all(std::span<const QuantumOperator> ops);

/// U |psi>. U must be unitary.
StateVector apply(const QuantumOperator& u, const StateVector& psi);

/// |psi><psi|.
DensityMatrix pure_to_density(const StateVector& psi);

/// U rho U^dagger. U must be unitary and match rho's dimension.
DensityMatrix conjugate(const DensityMatrix& rho, const QuantumOperator& u);

/// Computational-basis outcome probabilities (the diagonal of rho).
std::vector<double> outcome_probabilities(const DensityMatrix& rho);
std::vector<double> outcome_probabilities(const StateVector& psi);

/// Conjugates rho by a single-qubit operator acting on `qubit` (0 = most
/// significant), without building the full tensor product. `op` may be any
/// 2x2 operator; non-unitary inputs give K rho K^dagger.
DensityMatrix apply_local(const DensityMatrix& rho, const QuantumOperator& op, unsigned qubit);
StateVector apply_local(const StateVector& psi, const QuantumOperator& op, unsigned qubit);

/// The 2x2 operator `op` at position `qubit` of an n-qubit identity.
QuantumOperator embed_local(const QuantumOperator& op, unsigned qubit, unsigned n_qubits);

}  // namespace qgames
