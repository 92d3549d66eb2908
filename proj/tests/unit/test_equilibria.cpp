#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "helpers.hpp"
#include "qgames/equilibria.hpp"

using namespace qgames;
using std::numbers::pi;

namespace {

// Exact classical value by direct counting: a player wins when strictly
// fewer of the others share its choice than take the other side.
double random_play_oracle(unsigned n) {
  double wins = 0.0;
  for (unsigned others_same = 0; others_same < n; ++others_same) {
    const unsigned same = others_same + 1, other = n - same;
    if (same < other) wins += std::tgamma(n) / (std::tgamma(others_same + 1) * std::tgamma(n - others_same));
  }
  return wins / std::pow(2.0, n - 1);
}

Move half_flip() {
  return Move::mixed({{0.5, paulis::identity()}, {0.5, paulis::x()}});
}

}  // namespace

TEST_CASE("classical random payoff") {
  CHECK(classical_random_payoff_exact(4).num == 1);
  CHECK(classical_random_payoff_exact(4).den == 8);
  CHECK(classical_random_payoff_exact(3).den == 4);
  CHECK(classical_random_payoff_exact(5).num == 5);
  CHECK(classical_random_payoff_exact(5).den == 16);
  for (unsigned n = 2; n <= 20; ++n) CHECK(classical_random_payoff(n) == doctest::Approx(random_play_oracle(n)).epsilon(1e-14));
}

TEST_CASE("all-random classical profile admits no profitable deviation") {
  const auto game = minority_game(4, 0.0);
  const auto prof = StrategyProfile::uniform(4, half_flip());
  const auto r = best_response_gain(game, prof, 0);
  CHECK(r.baseline == doctest::Approx(0.125));
  CHECK(r.gain <= 1e-4);
  CHECK(r.gain >= -1e-9);
}

TEST_CASE("obvious best response is found") {
  const auto game = minority_game(4, 0.0);
  const auto prof = StrategyProfile::uniform(4, Move::pure(Su2Params{}));
  const auto r = best_response_gain(game, prof, 2);
  CHECK(r.baseline == doctest::Approx(0.0));
  CHECK(r.best >= 1.0 - 1e-6);
  CHECK(r.player == 2);
}

TEST_CASE("certification") {
  const auto game = minority_game(4);
  const auto ne = certify_nash(game, mg_ne_profile(4), 1e-3);
  CHECK(ne.certified);
  CHECK(ne.max_gain() <= 1e-3);
  for (const auto& r : ne.reports) CHECK(r.baseline == doctest::Approx(0.25).epsilon(1e-9));

  const auto noisy = certify_nash(with_noise(game, ChannelKind::PhaseDamping, 0.5), mg_ne_profile(4), 1e-3);
  CHECK(noisy.certified);

  const auto id = certify_nash(game, StrategyProfile::uniform(4, Move::pure(Su2Params{})), 1e-3);
  CHECK_FALSE(id.certified);
  CHECK(id.max_gain() > 0.1);

  CHECK_THROWS(certify_nash(game, mg_ne_profile(4), 0.0));
}

TEST_CASE("search is deterministic") {
  const auto game = minority_game(4);
  const auto prof = mg_ne_mixed_profile(4, std::vector<int>{0, 1, 0, 3});
  const auto a = best_response_gain(game, prof, 1), b = best_response_gain(game, prof, 1);
  CHECK(a.best == b.best);
  CHECK(a.argmax == b.argmax);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("symmetric optimum") {
  CHECK(optimize_symmetric(minority_game(4)).payoff == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(optimize_symmetric(minority_game(3)).payoff <= 0.25 + 1e-3);
  CHECK(optimize_symmetric(minority_game(4, 0.0)).payoff == doctest::Approx(0.125).epsilon(1e-3));
}

TEST_CASE("equilibrium family") {
  CHECK(play(minority_game(4), mg_ne_profile(4))[0] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(play(minority_game(6), mg_ne_profile(6))[0] == doctest::Approx(5.0 / 16).epsilon(1e-9));
  CHECK_THROWS(mg_ne_params(5));
  CHECK_THROWS(mg_ne_params(2));
  CHECK(mg_ne_params(4, 1) == mg_ne_params(4, 5));
  CHECK(mg_ne_params(4).alpha == doctest::Approx(-pi / 16));
}

TEST_CASE("index sum rule for four players") {
  const auto game = minority_game(4);
  const double expected[4] = {0.25, 0.125, 0.0, 0.125};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          const std::vector<int> idx{a, b, c, d};
          const auto pay = play(game, mg_ne_mixed_profile(4, idx));
          for (double v : pay) CHECK(v == doctest::Approx(expected[(a + b + c + d) % 4]).epsilon(1e-9));
        }
}

TEST_CASE("even N matches the classical game with one player fewer") {
  double prev = 0.0;
  for (unsigned n : {4u, 6u, 8u, 10u}) {
    const double q = play(minority_game(n), mg_ne_profile(n))[0];
    CHECK(q == doctest::Approx(random_play_oracle(n - 1)).epsilon(1e-9));
    CHECK(q > prev);
    CHECK(q < 0.5);
    prev = q;
  }
}

TEST_CASE("mixed deviations never beat the best pure one") {
  // Payoff is linear in the deviator's mixture weights, so a mixture of pure
  // deviations is bounded by its best component.
  std::mt19937_64 rng(4);
  const auto game = minority_game(4);
  const auto base = mg_ne_profile(4);
  const auto report = best_response_gain(game, base, 0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<WeightedUnitary> parts;
    std::vector<double> pure_payoffs;
    double wsum = 0.0;
    for (int k = 0; k < 3; ++k) {
      const auto u = su2(testing::random_su2(rng));
      const double w = 0.1 + 0.3 * k;
      wsum += w;
      parts.push_back({w, u});
      auto p = base;
      p.moves[0] = Move::pure(u);
      pure_payoffs.push_back(play(game, p)[0]);
    }
    for (auto& part : parts) part.weight /= wsum;
    auto p = base;
    p.moves[0] = Move::mixed(parts);
    const double mixed = play(game, p)[0];
    CHECK(mixed <= *std::max_element(pure_payoffs.begin(), pure_payoffs.end()) + 1e-12);
    CHECK(mixed <= report.best + 1e-3);
  }
}
