#include "qgames/games.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qgames/detail/local_ops.hpp"
#include "qgames/kernels.hpp"

namespace qgames {
namespace {

constexpr unsigned kMaxDensityQubits = 14;
constexpr unsigned kMaxPureQubits = 30;

// J(gamma) or J(gamma)^dagger applied to an amplitude buffer in place.
void entangle_pure(std::vector<cplx>& psi, double gamma, bool dagger) {
  const double c = std::cos(gamma / 2);
  const double s = (dagger ? -1.0 : 1.0) * std::sin(gamma / 2);
  const std::size_t mask = psi.size() - 1;
  for (std::size_t k = 0; k < psi.size() / 2; ++k) {
    const std::size_t kk = ~k & mask;
    const cplx a = psi[k];
    const cplx b = psi[kk];
    psi[k] = c * a + cplx{0.0, s} * b;
    psi[kk] = c * b + cplx{0.0, s} * a;
  }
}

// J rho J^dagger (or the dagger-conjugated variant) on a row-major buffer.
// sigma_x^{(x)N} permutes index k to ~k.
void entangle_density(std::vector<cplx>& rho, std::size_t dim, double gamma, bool dagger) {
  const double c = std::cos(gamma / 2);
  const double s = (dagger ? -1.0 : 1.0) * std::sin(gamma / 2);
  const std::size_t mask = dim - 1;
  const cplx ics{0.0, c * s};
  std::vector<cplx> out(rho.size());
  for (std::size_t r = 0; r < dim; ++r) {
    const std::size_t rr = ~r & mask;
    for (std::size_t col = 0; col < dim; ++col) {
      const std::size_t cc = ~col & mask;
      out[r * dim + col] = c * c * rho[r * dim + col] + s * s * rho[rr * dim + cc] +
                           ics * (rho[rr * dim + col] - rho[r * dim + cc]);
    }
  }
  rho.swap(out);
}

void decohere(std::vector<cplx>& rho, unsigned n, const KrausChannel& ch, std::vector<cplx>& scratch,
              std::vector<cplx>& acc) {
  for (unsigned q = 0; q < n; ++q) detail::apply_channel_inplace(rho, n, ch, q, scratch, acc);
}

void apply_moves_density(std::vector<cplx>& rho, unsigned n, const StrategyProfile& profile,
                         std::vector<cplx>& scratch, std::vector<cplx>& acc) {
  const auto& k = kernels::active();
  for (unsigned player = 0; player < n; ++player) {
    const Move& mv = profile.moves[player];
    if (mv.is_pure()) {
      detail::conjugate_local_inplace(rho, n, detail::to_mat2(mv.components()[0].unitary), player);
      continue;
    }
    acc.assign(rho.size(), cplx{});
    for (const auto& wu : mv.components()) {
      if (wu.weight == 0.0) continue;
      scratch.assign(rho.begin(), rho.end());
      detail::conjugate_local_inplace(scratch, n, detail::to_mat2(wu.unitary), player);
      k.axpy(acc, wu.weight, scratch);
    }
    rho.swap(acc);
  }
}

void check_profile(const GameSpec& game, const StrategyProfile& profile) {
  game.validate();
  if (profile.size() != game.n_players) throw std::invalid_argument("profile length does not match player count");
}

std::vector<cplx> initial_density(std::size_t dim) {
  std::vector<cplx> rho(dim * dim);
  rho[0] = 1.0;
  return rho;
}

}  // namespace

void GameSpec::validate() const {
  if (n_players == 0) throw std::invalid_argument("game needs at least one player");
  if (!payoff_fn) throw std::invalid_argument("game has no payoff function");
  if (entangler.n_players != n_players) throw std::invalid_argument("entangler player count differs from game");
  if (!(p >= 0.0 && p <= 1.0) || !(p_prime >= 0.0 && p_prime <= 1.0))
    throw std::invalid_argument("decoherence probability outside [0, 1]");
}

GameSpec minority_game(unsigned n_players, double gamma) {
  GameSpec g;
  g.name = "minority";
  g.n_players = n_players;
  g.payoff_fn = [n_players](std::uint64_t outcome, std::span<double> out) { minority_payoff(outcome, n_players, out); };
  g.entangler = {n_players, gamma};
  g.apply_final_disentangler = false;
  return g;
}

GameSpec with_noise(GameSpec game, ChannelKind kind, double p) {
  game.channel = kind;
  game.p = p;
  game.p_prime = p;
  return game;
}

// ------------------------------------------------------------------ moves

Move::Move(std::vector<WeightedUnitary> components, std::optional<Su2Params> params)
    : components_(std::move(components)), params_(params) {}

Move Move::pure(const Su2Params& params) { return Move({{1.0, su2(params)}}, params); }

Move Move::pure(QuantumOperator unitary) {
  if (unitary.rows() != 2 || unitary.cols() != 2) throw std::invalid_argument("move must be a single-qubit operator");
  if (!unitary.is_unitary()) throw std::invalid_argument("move is not unitary");
  return Move({{1.0, std::move(unitary)}});
}

Move Move::mixed(std::vector<WeightedUnitary> components) {
  if (components.empty()) throw std::invalid_argument("mixed move has no components");
  double total = 0.0;
  for (const auto& c : components) {
    if (!(c.weight >= 0.0)) throw std::invalid_argument("mixed move weight is negative");
    if (c.unitary.rows() != 2 || c.unitary.cols() != 2 || !c.unitary.is_unitary())
      throw std::invalid_argument("mixed move component is not a single-qubit unitary");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > kNormTol) throw std::invalid_argument("mixed move weights do not sum to 1");
  return Move(std::move(components));
}

StrategyProfile StrategyProfile::uniform(unsigned n_players, const Move& move) {
  return {std::vector<Move>(n_players, move)};
}

// --------------------------------------------------------------- pipeline

std::vector<DensityMatrix> run_pipeline_traced(const GameSpec& game, const StrategyProfile& profile) {
  check_profile(game, profile);
  const unsigned n = game.n_players;
  if (n > kMaxDensityQubits) throw std::invalid_argument("density-matrix path limited to 14 players");
  const std::size_t dim = std::size_t{1} << n;

  std::vector<DensityMatrix> stages;
  auto snapshot = [&](const std::vector<cplx>& rho) { stages.push_back(DensityMatrix::unchecked(dim, rho)); };

  std::vector<cplx> rho = initial_density(dim);
  std::vector<cplx> scratch, acc;
  snapshot(rho);
  entangle_density(rho, dim, game.entangler.gamma, false);
  snapshot(rho);
  if (game.channel && game.p > 0.0) decohere(rho, n, make_channel(*game.channel, game.p), scratch, acc);
  snapshot(rho);
  apply_moves_density(rho, n, profile, scratch, acc);
  snapshot(rho);
  if (game.channel && game.p_prime > 0.0) decohere(rho, n, make_channel(*game.channel, game.p_prime), scratch, acc);
  snapshot(rho);
  if (game.apply_final_disentangler) {
    entangle_density(rho, dim, game.entangler.gamma, true);
    snapshot(rho);
  }
  return stages;
}

DensityMatrix run_pipeline(const GameSpec& game, const StrategyProfile& profile) {
  check_profile(game, profile);
  const unsigned n = game.n_players;
  if (n > kMaxDensityQubits) throw std::invalid_argument("density-matrix path limited to 14 players");
  const std::size_t dim = std::size_t{1} << n;

  std::vector<cplx> rho = initial_density(dim);
  std::vector<cplx> scratch, acc;
  entangle_density(rho, dim, game.entangler.gamma, false);
  if (game.channel && game.p > 0.0) decohere(rho, n, make_channel(*game.channel, game.p), scratch, acc);
  apply_moves_density(rho, n, profile, scratch, acc);
  if (game.channel && game.p_prime > 0.0) decohere(rho, n, make_channel(*game.channel, game.p_prime), scratch, acc);
  if (game.apply_final_disentangler) entangle_density(rho, dim, game.entangler.gamma, true);
  return DensityMatrix::unchecked(dim, std::move(rho));
}

bool pure_path_eligible(const GameSpec& game, const StrategyProfile& profile) {
  if (game.has_noise()) return false;
  for (const auto& m : profile.moves)
    if (!m.is_pure()) return false;
  return true;
}

StateVector run_pipeline_pure(const GameSpec& game, const StrategyProfile& profile) {
  check_profile(game, profile);
  if (!pure_path_eligible(game, profile)) throw std::invalid_argument("pure-state path needs noiseless game and pure moves");
  const unsigned n = game.n_players;
  if (n > kMaxPureQubits) throw std::invalid_argument("pure-state path limited to 30 players");
  std::vector<cplx> psi(std::size_t{1} << n);
  psi[0] = 1.0;
  entangle_pure(psi, game.entangler.gamma, false);
  for (unsigned player = 0; player < n; ++player)
    detail::apply_local_inplace(psi, n, detail::to_mat2(profile.moves[player].components()[0].unitary), player);
  if (game.apply_final_disentangler) entangle_pure(psi, game.entangler.gamma, true);
  return StateVector(std::move(psi));
}

std::vector<double> final_outcome_probabilities(const GameSpec& game, const StrategyProfile& profile) {
  if (pure_path_eligible(game, profile)) return outcome_probabilities(run_pipeline_pure(game, profile));
  return outcome_probabilities(run_pipeline(game, profile));
}

std::vector<double> expected_payoffs(std::span<const double> probabilities, const GameSpec& game) {
  if (probabilities.size() != (std::size_t{1} << game.n_players))
    throw std::invalid_argument("expected_payoffs: outcome count does not match player count");
  std::vector<double> total(game.n_players, 0.0);
  std::vector<double> row(game.n_players);
  for (std::uint64_t xi = 0; xi < probabilities.size(); ++xi) {
    const double pr = probabilities[xi];
    if (pr == 0.0) continue;
    game.payoff_fn(xi, row);
    for (unsigned k = 0; k < game.n_players; ++k) total[k] += pr * row[k];
  }
  return total;
}

std::vector<double> expected_payoffs(const DensityMatrix& rho_f, const GameSpec& game) {
  if (rho_f.dim() != (std::size_t{1} << game.n_players))
    throw std::invalid_argument("expected_payoffs: state dimension does not match player count");
  return expected_payoffs(outcome_probabilities(rho_f), game);
}

std::vector<double> play(const GameSpec& game, const StrategyProfile& profile) {
  return expected_payoffs(final_outcome_probabilities(game, profile), game);
}

std::vector<double> minority_payoff(std::span<const int> bits) {
  std::size_t ones = 0;
  for (int b : bits) ones += (b != 0);
  const std::size_t zeros = bits.size() - ones;
  std::vector<double> out(bits.size(), 0.0);
  if (ones == zeros) return out;
  const int minority = ones < zeros ? 1 : 0;
  for (std::size_t k = 0; k < bits.size(); ++k) out[k] = ((bits[k] != 0) == (minority == 1)) ? 1.0 : 0.0;
  return out;
}

void minority_payoff(std::uint64_t outcome, unsigned n_players, std::span<double> payoffs) {
  const unsigned ones = static_cast<unsigned>(std::popcount(outcome));
  const unsigned zeros = n_players - ones;
  if (ones == zeros) {
    std::fill(payoffs.begin(), payoffs.end(), 0.0);
    return;
  }
  const std::uint64_t minority = ones < zeros ? 1 : 0;
  for (unsigned k = 0; k < n_players; ++k) {
    const std::uint64_t bit = (outcome >> (n_players - 1 - k)) & 1U;
    payoffs[k] = bit == minority ? 1.0 : 0.0;
  }
}

std::vector<double> classical_payoffs(const GameSpec& game, std::span<const int> flips) {
  if (flips.size() != game.n_players) throw std::invalid_argument("classical profile length does not match player count");
  std::uint64_t outcome = 0;
  for (int f : flips) outcome = (outcome << 1) | (f != 0 ? 1U : 0U);
  std::vector<double> out(game.n_players);
  game.payoff_fn(outcome, out);
  return out;
}

// ------------------------------------------------------------- penny flip

PennyFlipResult play_penny_flip(const QuantumOperator& q1, const Move& p_move, const QuantumOperator& q2) {
  GameSpec penny;
  penny.name = "penny_flip";
  penny.n_players = 1;
  penny.payoff_fn = [](std::uint64_t outcome, std::span<double> out) { out[0] = outcome == 0 ? -1.0 : 1.0; };
  penny.entangler = {1, 0.0};
  penny.apply_final_disentangler = false;

  DensityMatrix rho = conjugate(pure_to_density(StateVector::basis(1, 0)), q1);
  std::vector<cplx> acc(4);
  for (const auto& wu : p_move.components()) {
    if (wu.weight == 0.0) continue;
    const DensityMatrix moved = conjugate(rho, wu.unitary);
    kernels::active().axpy(acc, wu.weight, moved.entries());
  }
  rho = conjugate(DensityMatrix::unchecked(2, std::move(acc)), q2);
  const double heads = outcome_probabilities(rho)[0];
  return {heads, expected_payoffs(rho, penny)[0]};
}

Move penny_mix(double flip_weight) {
  if (!(flip_weight >= 0.0 && flip_weight <= 1.0)) throw std::invalid_argument("flip weight outside [0, 1]");
  const auto fm = flip_matrices();
  return Move::mixed({{flip_weight, fm.flip}, {1.0 - flip_weight, fm.no_flip}});
}

std::array<std::array<double, 4>, 2> penny_payoff_matrix() {
  const auto fm = flip_matrices();
  const std::array<const QuantumOperator*, 2> ops{&fm.no_flip, &fm.flip};
  std::array<std::array<double, 4>, 2> m{};
  for (int prow = 0; prow < 2; ++prow)
    for (int q = 0; q < 4; ++q)
      m[prow][q] = play_penny_flip(*ops[q >> 1], Move::pure(*ops[prow]), *ops[q & 1]).value_to_p;
  return m;
}

// -------------------------------------------------------- coordinated RPS

std::string_view rps_name(RpsChoice c) {
  switch (c) {
    case RpsChoice::Rock:
      return "rock";
    case RpsChoice::Paper:
      return "paper";
    case RpsChoice::Scissors:
      return "scissors";
  }
  return "unknown";
}

std::pair<double, double> rps_table(RpsChoice row, RpsChoice col) {
  const int r = static_cast<int>(row);
  const int c = static_cast<int>(col);
  if (r == c) return {0.0, 0.0};
  // Paper beats rock, scissors beat paper, rock beats scissors.
  return (r - c + 3) % 3 == 1 ? std::pair{1.0, -1.0} : std::pair{-1.0, 1.0};
}

StateVector ally_state(Coordination mode) {
  const double third = 1.0 / std::sqrt(3.0);
  if (mode == Coordination::Entangled) {
    std::vector<cplx> a(9);
    a[0] = a[4] = a[8] = third;
    return StateVector(std::move(a), 3);
  }
  const StateVector single({third, third, third}, 3);
  return tensor(single, single);
}

RpsRound coord_rps_round(Coordination mode, std::optional<RpsChoice> third_choice, Rng& rng) {
  static const std::vector<double> entangled = outcome_probabilities(ally_state(Coordination::Entangled));
  static const std::vector<double> independent = outcome_probabilities(ally_state(Coordination::Independent));
  const auto& probs = mode == Coordination::Entangled ? entangled : independent;

  const std::size_t joint = sample_discrete(rng, probs);
  RpsRound round{};
  round.ally1 = static_cast<RpsChoice>(joint / 3);
  round.ally2 = static_cast<RpsChoice>(joint % 3);
  round.third = third_choice ? *third_choice : static_cast<RpsChoice>(uniform_index(rng, 3));
  if (round.ally1 != round.ally2) {
    round.payoffs = {0.0, 0.0, 1.0};
    round.allies_win = false;
    return round;
  }
  const auto [ally, opponent] = rps_table(round.ally1, round.third);
  round.payoffs = {ally, ally, opponent};
  round.allies_win = ally > 0.0;
  return round;
}

double coord_rps_win_probability(Coordination mode, std::uint64_t n_rounds, Rng& rng) {
  if (n_rounds == 0) throw std::invalid_argument("need at least one round");
  std::uint64_t wins = 0;
  for (std::uint64_t i = 0; i < n_rounds; ++i) wins += coord_rps_round(mode, std::nullopt, rng).allies_win;
  return static_cast<double>(wins) / static_cast<double>(n_rounds);
}

}  // namespace qgames
