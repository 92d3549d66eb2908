#include "qgames/equilibria.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qgames {
namespace {

using std::numbers::pi;

double wrap_angle(double a) {
  if (a > pi) a -= 2 * pi;
  if (a < -pi) a += 2 * pi;
  return std::clamp(a, -pi, pi);
}

Su2Params grid_point(const SearchConfig& cfg, unsigned i, unsigned j, unsigned k) {
  const double d = static_cast<double>(cfg.grid - 1);
  return {pi * i / d, -pi + 2 * pi * j / d, -pi + 2 * pi * k / d};
}

struct Searcher {
  const SearchConfig& cfg;
  std::function<double(const Su2Params&)> objective;
  std::uint64_t evaluations = 0;

  double eval(const Su2Params& p) {
    ++evaluations;
    return objective(p);
  }

  std::pair<Su2Params, double> grid_best() {
    if (cfg.grid < 9) throw std::invalid_argument("search grid must have at least 9 points per axis");
    Su2Params best{};
    double best_val = -std::numeric_limits<double>::infinity();
    for (unsigned i = 0; i < cfg.grid; ++i)
      for (unsigned j = 0; j < cfg.grid; ++j)
        for (unsigned k = 0; k < cfg.grid; ++k) {
          const Su2Params p = grid_point(cfg, i, j, k);
          const double v = eval(p);
          if (v > best_val + 1e-15) {
            best_val = v;
            best = p;
          }
        }
    return {best, best_val};
  }

  // Coordinate ascent with step halving, starting at half a grid cell.
  std::pair<Su2Params, double> refine(Su2Params p, double val) {
    const double d = static_cast<double>(cfg.grid - 1);
    std::array<double, 3> step{pi / d / 2, pi / d, pi / d};
    unsigned rounds = 0;
    while (rounds < cfg.min_rounds || step[0] >= cfg.min_step) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (int axis = 0; axis < 3; ++axis) {
          for (double dir : {1.0, -1.0}) {
            Su2Params q = p;
            double* coord = axis == 0 ? &q.theta : axis == 1 ? &q.alpha : &q.beta;
            *coord += dir * step[axis];
            if (axis == 0) {
              q.theta = std::clamp(q.theta, 0.0, pi);
            } else {
              *coord = wrap_angle(*coord);
            }
            const double v = eval(q);
            if (v > val + 1e-15) {
              p = q;
              val = v;
              improved = true;
            }
          }
        }
      }
      for (double& s : step) s /= 2;
      ++rounds;
    }
    return {p, val};
  }
};

}  // namespace

double NeCertificate::max_gain() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& r : reports) m = std::max(m, r.gain);
  return m;
}

DeviationReport best_response_gain(const GameSpec& game, const StrategyProfile& profile, unsigned player,
                                   const SearchConfig& config) {
  if (player >= game.n_players) throw std::out_of_range("deviating player index out of range");
  if (profile.size() != game.n_players) throw std::invalid_argument("profile length does not match player count");

  StrategyProfile trial = profile;
  Searcher s{config, [&](const Su2Params& p) {
               trial.moves[player] = Move::pure(p);
               return play(game, trial)[player];
             }};

  DeviationReport report;
  report.player = player;
  report.baseline = play(game, profile)[player];

  auto [p, v] = s.grid_best();
  std::tie(p, v) = s.refine(p, v);
  // The current move, when parameterized, is a second starting point.
  if (const auto& own = profile.moves[player].params()) {
    auto [q, w] = s.refine(*own, s.eval(*own));
    if (w > v) {
      p = q;
      v = w;
    }
  }
  report.best = v;
  report.gain = v - report.baseline;
  report.argmax = p;
  report.evaluations = s.evaluations;
  return report;
}

NeCertificate certify_nash(const GameSpec& game, const StrategyProfile& profile, double epsilon,
                           const SearchConfig& config) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  NeCertificate cert{profile, {}, epsilon, false};
  for (unsigned k = 0; k < game.n_players; ++k) cert.reports.push_back(best_response_gain(game, profile, k, config));
  cert.certified = cert.max_gain() <= epsilon;
  return cert;
}

SymmetricOptimum optimize_symmetric(const GameSpec& game, const SearchConfig& config) {
  Searcher s{config, [&](const Su2Params& p) {
               return play(game, StrategyProfile::uniform(game.n_players, Move::pure(p)))[0];
             }};
  auto [p, v] = s.grid_best();
  std::tie(p, v) = s.refine(p, v);
  return {p, v, s.evaluations};
}

Su2Params mg_ne_params(unsigned n_players, int index) {
  if (n_players < 4 || n_players % 2 != 0)
    throw std::invalid_argument("symmetric quantum equilibrium family exists only for even N >= 4");
  const double delta = pi / (4.0 * n_players);
  const int n = static_cast<int>(n_players);
  const int m = ((index % n) + n) % n;
  return {pi / 2, -delta, wrap_angle(delta + 2 * pi * m / n)};
}

Move mg_ne_move(unsigned n_players, int index) { return Move::pure(mg_ne_params(n_players, index)); }

StrategyProfile mg_ne_profile(unsigned n_players, int index) {
  return StrategyProfile::uniform(n_players, mg_ne_move(n_players, index));
}

StrategyProfile mg_ne_mixed_profile(unsigned n_players, std::span<const int> indices) {
  if (indices.size() != n_players) throw std::invalid_argument("one family index per player required");
  StrategyProfile profile;
  for (int idx : indices) profile.moves.push_back(mg_ne_move(n_players, idx));
  return profile;
}

Fraction classical_random_payoff_exact(unsigned n_players) {
  if (n_players < 2 || n_players > 40) throw std::invalid_argument("classical enumeration needs 2 <= N <= 40");
  // Player 0 (most significant bit) wins in `wins` of the 2^N outcomes.
  const std::uint64_t outcomes = std::uint64_t{1} << n_players;
  std::uint64_t wins = 0;
  for (std::uint64_t xi = 0; xi < outcomes; ++xi) {
    const unsigned ones = static_cast<unsigned>(std::popcount(xi));
    const unsigned zeros = n_players - ones;
    if (ones == zeros) continue;
    const std::uint64_t minority = ones < zeros ? 1 : 0;
    wins += ((xi >> (n_players - 1)) & 1U) == minority;
  }
  const std::uint64_t g = std::gcd(wins, outcomes);
  return {wins / g, outcomes / g};
}

double classical_random_payoff(unsigned n_players) { return classical_random_payoff_exact(n_players).value(); }

}  // namespace qgames
