#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "qgames/qstate.hpp"

namespace qgames {

enum class ChannelKind { BitFlip, PhaseFlip, BitPhaseFlip, Depolarizing, PhaseDamping, AmplitudeDamping };

inline constexpr std::array kAllChannelKinds{ChannelKind::BitFlip,      ChannelKind::PhaseFlip,
                                             ChannelKind::BitPhaseFlip, ChannelKind::Depolarizing,
                                             ChannelKind::PhaseDamping, ChannelKind::AmplitudeDamping};

/// Canonical names: bit_flip, phase_flip, bit_phase_flip, depolarizing,
/// phase_damping, amplitude_damping.
std::string_view channel_name(ChannelKind kind);
/// Inverse of channel_name; also accepts "dephasing" and "dissipation".
/// Throws std::invalid_argument for anything else.
ChannelKind parse_channel_kind(std::string_view name);

/// Single-qubit decoherence map rho -> sum_k K_k rho K_k^dagger.
struct KrausChannel {
  ChannelKind kind;
  double p;
  std::vector<QuantumOperator> kraus_ops;

  /// max |(sum_k K_k^dagger K_k - I)_ij|
  double completeness_residual() const;
};

/// Throws std::invalid_argument unless 0 <= p <= 1.
KrausChannel make_channel(ChannelKind kind, double p);

/// Applies `ch` independently to each listed qubit. Throws on repeated or
/// out-of-range indices.
DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho, std::span<const unsigned> qubits);

/// Applies `ch` to every qubit of rho.
DensityMatrix apply_channel_all(const KrausChannel& ch, const DensityMatrix& rho);

namespace detail {
/// rho <- ch applied to `qubit`, using `scratch` and `acc` as work buffers of
/// rho's size.
void apply_channel_inplace(std::vector<cplx>& rho, unsigned n_qubits, const KrausChannel& ch, unsigned qubit,
                           std::vector<cplx>& scratch, std::vector<cplx>& acc);
}  // namespace detail

}  // namespace qgames
