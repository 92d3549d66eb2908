#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "qgames/channels.hpp"
#include "qgames/classical_mg.hpp"
#include "qgames/equilibria.hpp"
#include "qgames/games.hpp"

namespace qgames::experiments {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Column-labelled result table, emitted as CSV or a JSON array of rows.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

void write_csv(const Table& table, std::ostream& os);
void write_json(const Table& table, std::ostream& os);

/// Runs fn(0..count-1) on up to `jobs` threads; results keep index order.
template <class R>
std::vector<R> parallel_map(std::size_t count, unsigned jobs, const std::function<R(std::size_t)>& fn);

/// `points` evenly spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t points);

// Default grids.
std::vector<double> default_p_grid();      // 0, 0.05, ..., 1
std::vector<double> default_gamma_grid();  // 50 points on [0, pi/2]
std::vector<double> default_a_grid();      // 0, 0.1, ..., 1
std::vector<unsigned> default_n_list();    // 4, 6, 8, 10

enum class PennyQ { Hadamard, Identity };

/// Columns: a, prob_heads, value_to_P.
Table pennyflip(const std::vector<double>& a_grid, PennyQ q = PennyQ::Hadamard);

/// Columns: N, quantum_ne_payoff, classical_payoff, pareto_bound.
Table mg_sweep_n(const std::vector<unsigned>& n_list, unsigned jobs = 1);

/// Equilibrium-profile payoff for N players under `kind` at each p.
/// Columns: p, channel, payoff.
Table mg_decoherence(unsigned n_players, ChannelKind kind, const std::vector<double>& p_grid, unsigned jobs = 1);

/// Columns: gamma, payoff (p = 0).
Table mg_entanglement(unsigned n_players, const std::vector<double>& gamma_grid, unsigned jobs = 1);

struct ClassicalSweepConfig {
  unsigned n_agents = 101;
  std::vector<unsigned> memories{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  unsigned strategies = 2;
  std::uint64_t steps = 20000;
  std::optional<std::uint64_t> burn_in;  // default_burn_in(m) when empty
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  mg::HistoryMode history_mode = mg::HistoryMode::Popular;
};

/// One row per m. Columns: m, sigma_mean, sigma_spread, sigma2_over_n,
/// mean_fraction, strategy_space_size. Seeds are per-run seeds; the spread is
/// the sample standard deviation across them.
Table mg_classical(const ClassicalSweepConfig& cfg, unsigned jobs = 1);

/// Columns: t, attendance, winning_side.
Table mg_classical_series(const mg::MgStats& stats);

struct RpsSummary {
  Coordination mode;
  std::uint64_t rounds;
  std::uint64_t seed;
  double win_probability;
  double mean_table3_payoff;  // allies' mean payoff from the zero-sum table
  double standard_error;      // binomial, of win_probability
};

/// Rounds are split into fixed chunks of 10^4, chunk i drawing from
/// derive_stream(seed, i); the result does not depend on `jobs`.
RpsSummary rps(Coordination mode, std::uint64_t rounds, std::uint64_t seed, unsigned jobs = 1);

Table rps_table_view(const RpsSummary& s);

}  // namespace qgames::experiments

#include "qgames/detail/parallel_map.hpp"
