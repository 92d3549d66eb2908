#include "qgames/classical_mg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgames::mg {

MgState init_population(const MgParams& params, Rng& rng) {
  if (params.n_agents < 3 || params.n_agents % 2 == 0) throw std::invalid_argument("minority game needs an odd N >= 3");
  if (params.memory < 1 || params.memory > 24) throw std::invalid_argument("memory must be in [1, 24]");
  if (params.strategies < 1) throw std::invalid_argument("need at least one strategy per agent");

  const std::size_t histories = std::size_t{1} << params.memory;
  MgState state;
  state.params = params;
  state.agents.resize(params.n_agents);
  for (auto& agent : state.agents) {
    agent.tables.resize(params.strategies);
    agent.virtual_values.assign(params.strategies, 0);
    for (auto& table : agent.tables) {
      table.memory = params.memory;
      table.outputs.resize(histories);
      for (auto& out : table.outputs) out = static_cast<std::uint8_t>(rng() >> 63);
    }
  }
  state.history = static_cast<std::uint32_t>(uniform_index(rng, histories));
  return state;
}

void advance(MgState& state, Rng& rng) {
  const std::uint32_t h = state.history;
  std::uint32_t side0 = 0;
  std::vector<std::size_t> best;
  for (auto& agent : state.agents) {
    best.clear();
    std::int64_t top = agent.virtual_values[0];
    for (std::size_t i = 0; i < agent.tables.size(); ++i) {
      if (agent.virtual_values[i] > top) {
        top = agent.virtual_values[i];
        best.clear();
      }
      if (agent.virtual_values[i] == top) best.push_back(i);
    }
    const std::size_t pick = best.size() == 1 ? best[0] : best[uniform_index(rng, best.size())];
    side0 += agent.tables[pick](h) == 0;
  }

  const std::uint32_t n = state.params.n_agents;
  const std::uint8_t winner = side0 < n - side0 ? 0 : 1;
  for (auto& agent : state.agents)
    for (std::size_t i = 0; i < agent.tables.size(); ++i)
      if (agent.tables[i](h) == winner) ++agent.virtual_values[i];

  const std::uint32_t symbol = state.params.history_mode == HistoryMode::Winning ? winner : 1U - winner;
  const std::uint32_t mask = (std::uint32_t{1} << state.params.memory) - 1;
  state.history = ((h << 1) | symbol) & mask;
  state.attendance.push_back(side0);
  state.winning_side.push_back(winner);
  ++state.t;
}

MgState step(MgState state, Rng& rng) {
  advance(state, rng);
  return state;
}

std::uint64_t default_burn_in(unsigned memory) {
  return std::max<std::uint64_t>(1000, 10 * (std::uint64_t{1} << memory));
}

MgStats run(const MgParams& params, std::uint64_t steps, std::uint64_t burn_in, std::uint64_t seed) {
  if (steps <= burn_in) throw std::invalid_argument("steps must exceed burn-in");
  Rng rng(seed);
  MgState state = init_population(params, rng);
  state.attendance.reserve(steps);
  state.winning_side.reserve(steps);
  for (std::uint64_t i = 0; i < steps; ++i) advance(state, rng);

  MgStats stats;
  const auto first = state.attendance.begin() + static_cast<std::ptrdiff_t>(burn_in);
  const double count = static_cast<double>(steps - burn_in);
  double sum = 0.0;
  for (auto it = first; it != state.attendance.end(); ++it) sum += *it;
  const double mean = sum / count;
  double ss = 0.0;
  for (auto it = first; it != state.attendance.end(); ++it) ss += (*it - mean) * (*it - mean);
  stats.mean_fraction = mean / params.n_agents;
  stats.sigma = std::sqrt(ss / count);
  stats.attendance = std::move(state.attendance);
  stats.winning_side = std::move(state.winning_side);
  return stats;
}

boost::multiprecision::cpp_int strategy_space_size(unsigned memory) {
  if (memory < 1) throw std::invalid_argument("memory must be at least 1");
  if (memory > 24) throw std::invalid_argument("memory too large for an explicit count");
  boost::multiprecision::cpp_int one = 1;
  return one << (std::size_t{1} << memory);
}

std::size_t smallest_period(const std::vector<std::uint32_t>& series, std::size_t max_period) {
  for (std::size_t period = 1; period <= max_period && period < series.size(); ++period) {
    bool periodic = true;
    for (std::size_t t = 0; t + period < series.size(); ++t) {
      if (series[t] != series[t + period]) {
        periodic = false;
        break;
      }
    }
    if (periodic) return period;
  }
  return 0;
}

}  // namespace qgames::mg
