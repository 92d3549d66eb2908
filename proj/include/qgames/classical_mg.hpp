#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

#include "qgames/rng.hpp"

namespace qgames::mg {

/// Lookup table from the last m history bits to a choice in {0, 1}.
/// Index bit 0 is the most recent symbol.
struct StrategyTable {
  unsigned memory = 0;
  std::vector<std::uint8_t> outputs;  // 2^memory entries

  std::uint8_t operator()(std::uint32_t history) const { return outputs[history]; }
};

struct Agent {
  std::vector<StrategyTable> tables;
  std::vector<std::int64_t> virtual_values;
};

/// What the public history records each step.
enum class HistoryMode {
  Popular,  // the majority side
  Winning,  // the minority (winning) side
};

struct MgParams {
  unsigned n_agents = 101;
  unsigned memory = 3;
  unsigned strategies = 2;
  HistoryMode history_mode = HistoryMode::Popular;
};

struct MgState {
  MgParams params;
  std::uint32_t history = 0;  // last `memory` symbols, bit 0 most recent
  std::vector<Agent> agents;
  std::uint64_t t = 0;
  std::vector<std::uint32_t> attendance;      // agents on side 0, per step
  std::vector<std::uint8_t> winning_side;     // per step
};

/// Throws std::invalid_argument unless N >= 3 is odd, 1 <= m <= 24, s >= 1.
MgState init_population(const MgParams& params, Rng& rng);

/// Advances `state` by one round.
void advance(MgState& state, Rng& rng);

/// Value-returning form of advance().
MgState step(MgState state, Rng& rng);

struct MgStats {
  double mean_fraction = 0.0;  // mean attendance / N after burn-in
  double sigma = 0.0;          // population std deviation of attendance after burn-in
  std::vector<std::uint32_t> attendance;
  std::vector<std::uint8_t> winning_side;
};

/// max(1000, 10 * 2^m).
std::uint64_t default_burn_in(unsigned memory);

/// Runs `steps` rounds from a population seeded by `seed`; statistics cover
/// rounds [burn_in, steps). Throws unless steps > burn_in.
MgStats run(const MgParams& params, std::uint64_t steps, std::uint64_t burn_in, std::uint64_t seed);

/// Number of distinct strategy tables, 2^(2^m).
boost::multiprecision::cpp_int strategy_space_size(unsigned memory);

/// Smallest period P <= max_period with series[t] == series[t + P] for all t,
/// or 0 if there is none.
std::size_t smallest_period(const std::vector<std::uint32_t>& series, std::size_t max_period);

}  // namespace qgames::mg
