#include "qgames/qstate.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "qgames/detail/local_ops.hpp"
#include "qgames/kernels.hpp"

namespace qgames {
namespace {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMat>;
using MutMap = Eigen::Map<RowMat>;

// Returns n with base^n == value, or -1.
int integer_log(std::size_t value, unsigned base) {
  if (base < 2 || value == 0) return -1;
  int n = 0;
  while (value % base == 0) {
    value /= base;
    ++n;
  }
  return value == 1 ? n : -1;
}

double norm_squared(std::span<const cplx> v) {
  double s = 0.0;
  for (const cplx& x : v) s += std::norm(x);
  return s;
}

}  // namespace

// ---------------------------------------------------------------- operator

QuantumOperator::QuantumOperator(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("operator dimensions must be positive");
  if (entries_.size() != rows_ * cols_) throw std::invalid_argument("operator entry count does not match shape");
}

QuantumOperator::QuantumOperator(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("operator dimensions must be positive");
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged operator rows");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

QuantumOperator QuantumOperator::identity(std::size_t dim) {
  std::vector<cplx> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
  return {dim, dim, std::move(e)};
}

QuantumOperator QuantumOperator::zeros(std::size_t rows, std::size_t cols) {
  return {rows, cols, std::vector<cplx>(rows * cols)};
}

QuantumOperator QuantumOperator::adjoint() const {
  std::vector<cplx> e(entries_.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) e[c * rows_ + r] = std::conj(entries_[r * cols_ + c]);
  return {cols_, rows_, std::move(e)};
}

QuantumOperator QuantumOperator::conj() const {
  std::vector<cplx> e(entries_);
  for (auto& x : e) x = std::conj(x);
  return {rows_, cols_, std::move(e)};
}

double QuantumOperator::unitarity_residual() const {
  if (!is_square()) return std::numeric_limits<double>::infinity();
  return max_abs_diff(*this * adjoint(), identity(rows_));
}

QuantumOperator operator*(const QuantumOperator& a, const QuantumOperator& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("operator product: inner dimensions differ");
  std::vector<cplx> e(a.rows_ * b.cols_);
  MutMap(e.data(), a.rows_, b.cols_).noalias() =
      ConstMap(a.entries_.data(), a.rows_, a.cols_) * ConstMap(b.entries_.data(), b.rows_, b.cols_);
  return {a.rows_, b.cols_, std::move(e)};
}

QuantumOperator operator+(const QuantumOperator& a, const QuantumOperator& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("operator sum: shapes differ");
  std::vector<cplx> e(a.entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries_[i];
  return {a.rows_, a.cols_, std::move(e)};
}

QuantumOperator operator-(const QuantumOperator& a, const QuantumOperator& b) { return a + cplx{-1.0} * b; }

QuantumOperator operator*(cplx s, const QuantumOperator& a) {
  std::vector<cplx> e(a.entries_);
  for (auto& x : e) x *= s;
  return {a.rows_, a.cols_, std::move(e)};
}

double max_abs_diff(const QuantumOperator& a, const QuantumOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

bool equal_up_to_phase(const QuantumOperator& a, const QuantumOperator& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  // Phase from the largest entry of b.
  std::size_t k = 0;
  for (std::size_t i = 0; i < b.entries().size(); ++i)
    if (std::abs(b.entries()[i]) > std::abs(b.entries()[k])) k = i;
  if (std::abs(b.entries()[k]) == 0.0) return max_abs_diff(a, b) <= tol;
  const cplx ratio = a.entries()[k] / b.entries()[k];
  if (std::abs(std::abs(ratio) - 1.0) > tol) return false;
  const cplx phase = ratio / std::abs(ratio);
  return max_abs_diff(a, phase * b) <= tol;
}

// ------------------------------------------------------------ state vector

StateVector::StateVector(std::vector<cplx> amplitudes, unsigned local_dim)
    : amplitudes_(std::move(amplitudes)), local_dim_(local_dim), n_sites_(0) {
  const int n = integer_log(amplitudes_.size(), local_dim_);
  if (n < 1) throw std::invalid_argument("state dimension must be a positive power of the local dimension");
  n_sites_ = static_cast<unsigned>(n);
  if (std::abs(norm_squared(amplitudes_) - 1.0) > kNormTol) throw std::invalid_argument("state vector is not normalized");
}

StateVector::StateVector(Unchecked, std::vector<cplx> amplitudes, unsigned local_dim, unsigned n_sites)
    : amplitudes_(std::move(amplitudes)), local_dim_(local_dim), n_sites_(n_sites) {}

StateVector StateVector::basis(unsigned n_sites, std::uint64_t index, unsigned local_dim) {
  if (n_sites == 0 || local_dim < 2) throw std::invalid_argument("basis state needs at least one site of dimension >= 2");
  std::size_t dim = 1;
  for (unsigned i = 0; i < n_sites; ++i) dim *= local_dim;
  if (index >= dim) throw std::out_of_range("basis index out of range");
  std::vector<cplx> a(dim);
  a[index] = 1.0;
  return StateVector(Unchecked{}, std::move(a), local_dim, n_sites);
}

// ---------------------------------------------------------- density matrix

DensityMatrix::DensityMatrix(std::size_t dim, std::vector<cplx> entries)
    : DensityMatrix(Unchecked{}, dim, std::move(entries)) {
  if (hermiticity_residual() > kUnitaryTol) throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(trace() - 1.0) > kNormTol) throw std::invalid_argument("density matrix trace is not 1");
  if (min_eigenvalue(*this) < -kPsdTol) throw std::invalid_argument("density matrix is not positive semidefinite");
}

DensityMatrix::DensityMatrix(Unchecked, std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), n_qubits_(0), entries_(std::move(entries)) {
  if (dim_ == 0) throw std::invalid_argument("density matrix dimension must be positive");
  if (entries_.size() != dim_ * dim_) throw std::invalid_argument("density matrix entry count does not match dimension");
  const int n = integer_log(dim_, 2);
  n_qubits_ = n > 0 ? static_cast<unsigned>(n) : 0;
}

DensityMatrix DensityMatrix::unchecked(std::size_t dim, std::vector<cplx> entries) {
  return DensityMatrix(Unchecked{}, dim, std::move(entries));
}

cplx DensityMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i];
  return t;
}

double DensityMatrix::hermiticity_residual() const {
  double m = 0.0;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      m = std::max(m, std::abs(entries_[r * dim_ + c] - std::conj(entries_[c * dim_ + r])));
  return m;
}

std::vector<double> eigenvalues(const DensityMatrix& rho) {
  const RowMat m = ConstMap(rho.entries().data(), rho.dim(), rho.dim());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double min_eigenvalue(const DensityMatrix& rho) { return eigenvalues(rho).front(); }

void check_density(const DensityMatrix& rho, const std::string& stage) {
  if (const double h = rho.hermiticity_residual(); h > kUnitaryTol)
    throw NumericalError(stage + ": Hermiticity residual " + std::to_string(h));
  if (const double t = std::abs(rho.trace() - 1.0); t > kNormTol)
    throw NumericalError(stage + ": trace deviates from 1 by " + std::to_string(t));
  if (const double e = min_eigenvalue(rho); e < -kPsdTol)
    throw NumericalError(stage + ": negative eigenvalue " + std::to_string(e));
}

// -------------------------------------------------------------- operations

QuantumOperator tensor(const QuantumOperator& a, const QuantumOperator& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  std::vector<cplx> e(rows * cols);
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const cplx s = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          e[(ar * b.rows() + br) * cols + ac * b.cols() + bc] = s * b(br, bc);
    }
  return {rows, cols, std::move(e)};
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  if (a.local_dim() != b.local_dim()) throw std::invalid_argument("tensor: local dimensions differ");
  std::vector<cplx> e(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) e[i * b.dim() + j] = a[i] * b[j];
  return StateVector(StateVector::Unchecked{}, std::move(e), a.local_dim(), a.n_sites() + b.n_sites());
}

QuantumOperator tensor_all(std::span<const QuantumOperator> ops) {
  if (ops.empty()) throw std::invalid_argument("tensor_all: no operands");
  QuantumOperator acc = ops.front();
  for (std::size_t i = 1; i < ops.size(); ++i) acc = tensor(acc, ops[i]);
  return acc;
}

StateVector apply(const QuantumOperator& u, const StateVector& psi) {
  if (u.cols() != psi.dim() || u.rows() != psi.dim()) throw std::invalid_argument("apply: dimension mismatch");
  if (!u.is_unitary()) throw std::invalid_argument("apply: operator is not unitary");
  std::vector<cplx> out(psi.dim());
  for (std::size_t r = 0; r < u.rows(); ++r) {
    cplx s = 0.0;
    for (std::size_t c = 0; c < u.cols(); ++c) s += u(r, c) * psi[c];
    out[r] = s;
  }
  return StateVector(StateVector::Unchecked{}, std::move(out), psi.local_dim(), psi.n_sites());
}

DensityMatrix pure_to_density(const StateVector& psi) {
  // StateVector construction already enforces normalization; recheck since
  // products of many factors can drift.
  if (std::abs(norm_squared(psi.amplitudes()) - 1.0) > kNormTol)
    throw std::invalid_argument("pure_to_density: state is not normalized");
  const std::size_t d = psi.dim();
  std::vector<cplx> e(d * d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) e[r * d + c] = psi[r] * std::conj(psi[c]);
  return DensityMatrix::unchecked(d, std::move(e));
}

DensityMatrix conjugate(const DensityMatrix& rho, const QuantumOperator& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) throw std::invalid_argument("conjugate: dimension mismatch");
  if (!u.is_unitary()) throw std::invalid_argument("conjugate: operator is not unitary");
  const std::size_t d = rho.dim();
  const ConstMap um(u.entries().data(), d, d);
  std::vector<cplx> e(d * d);
  MutMap(e.data(), d, d).noalias() = um * ConstMap(rho.entries().data(), d, d) * um.adjoint();
  return DensityMatrix::unchecked(d, std::move(e));
}

std::vector<double> outcome_probabilities(const DensityMatrix& rho) {
  std::vector<double> p(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) p[i] = rho(i, i).real();
  return p;
}

std::vector<double> outcome_probabilities(const StateVector& psi) {
  std::vector<double> p(psi.dim());
  kernels::active().abs_squared(psi.amplitudes(), p);
  return p;
}

DensityMatrix apply_local(const DensityMatrix& rho, const QuantumOperator& op, unsigned qubit) {
  if (rho.n_qubits() == 0) throw std::invalid_argument("apply_local: state is not a qubit register");
  if (qubit >= rho.n_qubits()) throw std::out_of_range("apply_local: qubit index out of range");
  std::vector<cplx> e(rho.entries().begin(), rho.entries().end());
  detail::conjugate_local_inplace(e, rho.n_qubits(), detail::to_mat2(op), qubit);
  return DensityMatrix::unchecked(rho.dim(), std::move(e));
}

StateVector apply_local(const StateVector& psi, const QuantumOperator& op, unsigned qubit) {
  if (psi.local_dim() != 2) throw std::invalid_argument("apply_local: state is not a qubit register");
  if (qubit >= psi.n_sites()) throw std::out_of_range("apply_local: qubit index out of range");
  if (!op.is_unitary()) throw std::invalid_argument("apply_local: operator is not unitary");
  std::vector<cplx> e(psi.amplitudes().begin(), psi.amplitudes().end());
  detail::apply_local_inplace(e, psi.n_sites(), detail::to_mat2(op), qubit);
  return StateVector(StateVector::Unchecked{}, std::move(e), 2, psi.n_sites());
}

QuantumOperator embed_local(const QuantumOperator& op, unsigned qubit, unsigned n_qubits) {
  if (op.rows() != 2 || op.cols() != 2) throw std::invalid_argument("embed_local: operator must be 2x2");
  if (qubit >= n_qubits) throw std::out_of_range("embed_local: qubit index out of range");
  QuantumOperator acc = qubit == 0 ? op : QuantumOperator::identity(2);
  for (unsigned k = 1; k < n_qubits; ++k) acc = tensor(acc, k == qubit ? op : QuantumOperator::identity(2));
  return acc;
}

namespace detail {

kernels::Mat2 to_mat2(const QuantumOperator& op) {
  if (op.rows() != 2 || op.cols() != 2) throw std::invalid_argument("single-qubit operator must be 2x2");
  return {op(0, 0), op(0, 1), op(1, 0), op(1, 1)};
}

void apply_local_inplace(std::span<cplx> psi, unsigned n_qubits, const kernels::Mat2& op, unsigned qubit) {
  kernels::active().apply_2x2(psi, n_qubits - 1 - qubit, op);
}

void conjugate_local_inplace(std::span<cplx> rho, unsigned n_qubits, const kernels::Mat2& op, unsigned qubit) {
  // Flat index r * dim + c: row bits sit above the n column bits.
  const unsigned col_bit = n_qubits - 1 - qubit;
  const auto& k = kernels::active();
  k.apply_2x2(rho, col_bit + n_qubits, op);
  k.apply_2x2(rho, col_bit, {std::conj(op.m00), std::conj(op.m01), std::conj(op.m10), std::conj(op.m11)});
}

}  // namespace detail
}  // namespace qgames
