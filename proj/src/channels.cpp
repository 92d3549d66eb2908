#include "qgames/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qgames/detail/local_ops.hpp"
#include "qgames/kernels.hpp"
#include "qgames/qops.hpp"

namespace qgames {

std::string_view channel_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::BitFlip:
      return "bit_flip";
    case ChannelKind::PhaseFlip:
      return "phase_flip";
    case ChannelKind::BitPhaseFlip:
      return "bit_phase_flip";
    case ChannelKind::Depolarizing:
      return "depolarizing";
    case ChannelKind::PhaseDamping:
      return "phase_damping";
    case ChannelKind::AmplitudeDamping:
      return "amplitude_damping";
  }
  return "unknown";
}

ChannelKind parse_channel_kind(std::string_view name) {
  for (ChannelKind k : kAllChannelKinds)
    if (channel_name(k) == name) return k;
  if (name == "dephasing") return ChannelKind::PhaseDamping;
  if (name == "dissipation") return ChannelKind::AmplitudeDamping;
  throw std::invalid_argument("unknown channel: " + std::string(name));
}

double KrausChannel::completeness_residual() const {
  QuantumOperator sum = QuantumOperator::zeros(2, 2);
  for (const auto& k : kraus_ops) sum = sum + k.adjoint() * k;
  return max_abs_diff(sum, QuantumOperator::identity(2));
}

KrausChannel make_channel(ChannelKind kind, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("channel probability outside [0, 1]");
  const double keep = std::sqrt(1.0 - p);
  const double err = std::sqrt(p);
  KrausChannel ch{kind, p, {}};
  auto scaled = [](double s, const QuantumOperator& op) { return cplx{s} * op; };
  switch (kind) {
    case ChannelKind::BitFlip:
      ch.kraus_ops = {scaled(keep, paulis::identity()), scaled(err, paulis::x())};
      break;
    case ChannelKind::PhaseFlip:
      ch.kraus_ops = {scaled(keep, paulis::identity()), scaled(err, paulis::z())};
      break;
    case ChannelKind::BitPhaseFlip:
      ch.kraus_ops = {scaled(keep, paulis::identity()), scaled(err, paulis::y())};
      break;
    case ChannelKind::Depolarizing: {
      const double each = std::sqrt(p / 4.0);
      ch.kraus_ops = {scaled(std::sqrt(1.0 - 3.0 * p / 4.0), paulis::identity()), scaled(each, paulis::x()),
                      scaled(each, paulis::y()), scaled(each, paulis::z())};
      break;
    }
    case ChannelKind::PhaseDamping:
      ch.kraus_ops = {QuantumOperator{{1.0, 0.0}, {0.0, keep}}, QuantumOperator{{0.0, 0.0}, {0.0, err}}};
      break;
    case ChannelKind::AmplitudeDamping:
      ch.kraus_ops = {QuantumOperator{{1.0, 0.0}, {0.0, keep}}, QuantumOperator{{0.0, err}, {0.0, 0.0}}};
      break;
  }
  return ch;
}

namespace detail {

void apply_channel_inplace(std::vector<cplx>& rho, unsigned n_qubits, const KrausChannel& ch, unsigned qubit,
                           std::vector<cplx>& scratch, std::vector<cplx>& acc) {
  const auto& k = kernels::active();
  acc.assign(rho.size(), cplx{});
  for (const auto& op : ch.kraus_ops) {
    scratch.assign(rho.begin(), rho.end());
    conjugate_local_inplace(scratch, n_qubits, to_mat2(op), qubit);
    k.axpy(acc, 1.0, scratch);
  }
  rho.swap(acc);
}

}  // namespace detail

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho, std::span<const unsigned> qubits) {
  const unsigned n = rho.n_qubits();
  if (n == 0 && !qubits.empty()) throw std::invalid_argument("apply_channel: state is not a qubit register");
  std::vector<unsigned> seen(qubits.begin(), qubits.end());
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw std::invalid_argument("apply_channel: repeated qubit index");
  if (!seen.empty() && seen.back() >= n) throw std::out_of_range("apply_channel: qubit index out of range");

  std::vector<cplx> e(rho.entries().begin(), rho.entries().end());
  std::vector<cplx> scratch, acc;
  for (unsigned q : qubits) detail::apply_channel_inplace(e, n, ch, q, scratch, acc);
  return DensityMatrix::unchecked(rho.dim(), std::move(e));
}

DensityMatrix apply_channel_all(const KrausChannel& ch, const DensityMatrix& rho) {
  std::vector<unsigned> all(rho.n_qubits());
  for (unsigned i = 0; i < all.size(); ++i) all[i] = i;
  return apply_channel(ch, rho, all);
}

}  // namespace qgames
