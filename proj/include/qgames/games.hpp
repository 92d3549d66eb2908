#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgames/channels.hpp"
#include "qgames/qops.hpp"
#include "qgames/qstate.hpp"
#include "qgames/rng.hpp"

namespace qgames {

/// Writes the payoff of every player for computational outcome `outcome`
/// (big-endian: player 0 is the most significant bit) into `payoffs`.
using PayoffFn = std::function<void(std::uint64_t outcome, std::span<double> payoffs)>;

/// An N-player game in the Eisert scheme:
///   rho1 = J rho0 J^dagger, rho2 = D(rho1, p), rho3 = moves, rho4 = D(rho3, p'),
///   rho5 = J^dagger rho4 J (optional), payoffs from the computational basis.
struct GameSpec {
  std::string name;
  unsigned n_players = 0;
  PayoffFn payoff_fn;
  EntanglerSpec entangler;
  std::optional<ChannelKind> channel;
  double p = 0.0;
  double p_prime = 0.0;
  bool apply_final_disentangler = true;

  bool has_noise() const { return channel.has_value() && (p > 0.0 || p_prime > 0.0); }
  /// Throws std::invalid_argument when fields are inconsistent.
  void validate() const;
};

/// Minority game with entangling parameter gamma. The final disentangler is
/// off: it only mixes outcomes that reward the same players.
GameSpec minority_game(unsigned n_players, double gamma = std::numbers::pi / 2);

/// Same game with decoherence `kind` applied at both noise stages with
/// probability p.
GameSpec with_noise(GameSpec game, ChannelKind kind, double p);

struct WeightedUnitary {
  double weight;
  QuantumOperator unitary;
};

/// A player's move: one unitary, or a convex combination of unitaries.
class Move {
 public:
  static Move pure(const Su2Params& params);
  static Move pure(QuantumOperator unitary);
  /// Weights must be non-negative and sum to 1 within kNormTol.
  static Move mixed(std::vector<WeightedUnitary> components);

  bool is_pure() const { return components_.size() == 1; }
  std::span<const WeightedUnitary> components() const { return components_; }
  /// Angles when built from Su2Params.
  const std::optional<Su2Params>& params() const { return params_; }

 private:
  explicit Move(std::vector<WeightedUnitary> components, std::optional<Su2Params> params = std::nullopt);

  std::vector<WeightedUnitary> components_;
  std::optional<Su2Params> params_;
};

struct StrategyProfile {
  std::vector<Move> moves;

  static StrategyProfile uniform(unsigned n_players, const Move& move);
  std::size_t size() const { return moves.size(); }
};

/// Density-matrix pipeline. Returns rho_f.
DensityMatrix run_pipeline(const GameSpec& game, const StrategyProfile& profile);

/// rho_0 .. rho_f in order; the disentangling stage is absent when disabled.
std::vector<DensityMatrix> run_pipeline_traced(const GameSpec& game, const StrategyProfile& profile);

/// True when the pure-state path applies (no effective noise, all moves pure).
bool pure_path_eligible(const GameSpec& game, const StrategyProfile& profile);

/// State-vector pipeline; throws std::invalid_argument when not eligible.
StateVector run_pipeline_pure(const GameSpec& game, const StrategyProfile& profile);

/// Outcome distribution, using the pure-state path whenever it applies.
std::vector<double> final_outcome_probabilities(const GameSpec& game, const StrategyProfile& profile);

/// <$^k> = sum_xi P(xi) $_xi^k.
std::vector<double> expected_payoffs(std::span<const double> probabilities, const GameSpec& game);
std::vector<double> expected_payoffs(const DensityMatrix& rho_f, const GameSpec& game);

/// Expected payoffs of `profile`, picking the cheaper representation.
std::vector<double> play(const GameSpec& game, const StrategyProfile& profile);

/// 1 for every player on the strictly smaller side, 0 otherwise (ties pay
/// nobody). bits[k] is player k's choice.
std::vector<double> minority_payoff(std::span<const int> bits);
/// Same, for an outcome index of n_players bits (player 0 most significant).
void minority_payoff(std::uint64_t outcome, unsigned n_players, std::span<double> payoffs);

/// Payoff vector a classical profile (flips[k] = player k applies a flip)
/// earns in the underlying classical game.
std::vector<double> classical_payoffs(const GameSpec& game, std::span<const int> flips);

// ------------------------------------------------------------- penny flip

struct PennyFlipResult {
  double prob_heads;
  double value_to_p;
};

/// The penny starts heads up (|H> = |0>). Q applies q1, P applies `p_move`
/// (typically a mixture of F and N), Q applies q2. Q wins on heads.
PennyFlipResult play_penny_flip(const QuantumOperator& q1, const Move& p_move, const QuantumOperator& q2);

/// P's mixed move a F + (1 - a) N.
Move penny_mix(double flip_weight);

/// P's payoffs: rows P in {N, F}, columns Q in {NN, NF, FN, FF}.
std::array<std::array<double, 4>, 2> penny_payoff_matrix();

// ---------------------------------------------------- coordinated RPS

enum class RpsChoice { Rock = 0, Paper = 1, Scissors = 2 };
enum class Coordination { Entangled, Independent };

std::string_view rps_name(RpsChoice c);

/// Two-player RPS payoffs (row, column).
std::pair<double, double> rps_table(RpsChoice row, RpsChoice col);

struct RpsRound {
  RpsChoice ally1;
  RpsChoice ally2;
  RpsChoice third;
  std::array<double, 3> payoffs;  // ally1, ally2, third
  bool allies_win;
};

/// Joint state the allies measure: (|00>+|11>+|22>)/sqrt(3) when entangled,
/// a product of uniform qutrit superpositions otherwise.
StateVector ally_state(Coordination mode);

/// One round. `third_choice` empty means the third player picks uniformly.
RpsRound coord_rps_round(Coordination mode, std::optional<RpsChoice> third_choice, Rng& rng);

/// Monte-Carlo estimate of P(allies win) against a uniform third player.
double coord_rps_win_probability(Coordination mode, std::uint64_t n_rounds, Rng& rng);

}  // namespace qgames
