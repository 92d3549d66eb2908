#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qgames/games.hpp"
#include "qgames/qops.hpp"

namespace qgames {

/// Grid-then-refine search over (theta, alpha, beta).
struct SearchConfig {
  unsigned grid = 13;           // points per axis, >= 9
  unsigned min_rounds = 4;      // step halvings performed at least
  double min_step = 1e-3;       // radians; refinement stops below this
};

struct DeviationReport {
  unsigned player = 0;
  double baseline = 0.0;
  double best = 0.0;
  double gain = 0.0;  // best - baseline
  Su2Params argmax;
  std::uint64_t evaluations = 0;
};

struct NeCertificate {
  StrategyProfile profile;
  std::vector<DeviationReport> reports;
  double epsilon = 0.0;
  bool certified = false;

  double max_gain() const;
};

/// Best unilateral pure deviation of `player` with every other move fixed.
DeviationReport best_response_gain(const GameSpec& game, const StrategyProfile& profile, unsigned player,
                                   const SearchConfig& config = {});

/// Certified iff every player's best deviation gains at most epsilon.
NeCertificate certify_nash(const GameSpec& game, const StrategyProfile& profile, double epsilon,
                           const SearchConfig& config = {});

struct SymmetricOptimum {
  Su2Params params;
  double payoff = 0.0;
  std::uint64_t evaluations = 0;
};

/// Maximizes the common payoff (player 0's) when every player uses the
/// same strategy.
SymmetricOptimum optimize_symmetric(const GameSpec& game, const SearchConfig& config = {});

/// Member `index` of the symmetric minority-game equilibrium family for an
/// even number of players:
///   U(pi/2, -delta, delta + 2 pi index / N),  delta = pi / (4N),
/// with the index taken mod N. Index 0 is the canonical member. Throws for odd or N < 4.
Su2Params mg_ne_params(unsigned n_players, int index = 0);
Move mg_ne_move(unsigned n_players, int index = 0);
StrategyProfile mg_ne_profile(unsigned n_players, int index = 0);
/// Players pick members independently: player k uses `indices[k]`.
StrategyProfile mg_ne_mixed_profile(unsigned n_players, std::span<const int> indices);

struct Fraction {
  std::uint64_t num;
  std::uint64_t den;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Per-player expected minority payoff when all N players pick 0 or 1
/// uniformly, by exhaustive enumeration; reduced fraction.
Fraction classical_random_payoff_exact(unsigned n_players);
double classical_random_payoff(unsigned n_players);

}  // namespace qgames
