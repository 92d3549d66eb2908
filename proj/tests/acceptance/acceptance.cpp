// One line per acceptance criterion: "PASS <n> <title>: <detail>" or
// "FAIL ...". Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qgames/channels.hpp"
#include "qgames/classical_mg.hpp"
#include "qgames/equilibria.hpp"
#include "qgames/experiments.hpp"
#include "qgames/games.hpp"

using namespace qgames;
namespace ex = qgames::experiments;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "exception: " << e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s(%.1fs)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.str().c_str(), secs);
  std::fflush(stdout);
}

double column(const ex::Table& t, std::size_t row, std::size_t col) { return std::get<double>(t.rows[row][col]); }

}  // namespace

int main() {
  criterion(1, "penny flip", [](Outcome& o) {
    const double r2 = 1.0 / std::numbers::sqrt2;
    const auto h = meyer_u(r2, r2);
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i) {
      const auto r = play_penny_flip(h, penny_mix(i / 10.0), h);
      worst = std::max({worst, std::abs(r.prob_heads - 1.0), std::abs(r.value_to_p + 1.0)});
    }
    o.check(worst <= 1e-12, "prob_heads 1 and value -1 within 1e-12");
    o.detail << "max deviation " << worst << ' ';
  });

  criterion(2, "classical reproduction", [](Outcome& o) {
    const Move flip = Move::pure(Su2Params{pi, 0, 0});
    const Move stay = Move::pure(Su2Params{});
    double worst = 0.0;
    int profiles = 0;
    for (unsigned n = 2; n <= 5; ++n) {
      const auto game = minority_game(n, pi / 2);
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        StrategyProfile prof;
        std::vector<int> flips(n);
        for (unsigned k = 0; k < n; ++k) {
          flips[k] = (mask >> (n - 1 - k)) & 1;
          prof.moves.push_back(flips[k] ? flip : stay);
        }
        const auto got = expected_payoffs(run_pipeline(game, prof), game);
        const auto want = classical_payoffs(game, flips);
        for (unsigned k = 0; k < n; ++k) worst = std::max(worst, std::abs(got[k] - want[k]));
        ++profiles;
      }
    }
    o.check(worst <= 1e-12, "payoffs equal the classical table within 1e-12");
    o.detail << profiles << " profiles, max deviation " << worst << ' ';
  });

  criterion(3, "quantum minority game N=4", [](Outcome& o) {
    const auto best = optimize_symmetric(minority_game(4), {13, 4, 1e-5});
    const auto exact = classical_random_payoff_exact(4);
    o.check(std::abs(best.payoff - 0.25) <= 1e-3, "symmetric optimum 0.25");
    o.check(exact.num == 1 && exact.den == 8, "classical value 1/8");
    o.detail << "optimum " << best.payoff << " at (" << best.params.theta << ", " << best.params.alpha << ", "
             << best.params.beta << "), classical " << exact.num << '/' << exact.den << ' ';
  });

  criterion(4, "even-N bridge", [](Outcome& o) {
    double prev = 0.0;
    for (unsigned n : {4u, 6u, 8u}) {
      const double q = play(minority_game(n), mg_ne_profile(n))[0];
      const double c = classical_random_payoff(n - 1);
      o.check(std::abs(q - c) <= 1e-3, "N=" + std::to_string(n) + " equals the (N-1)-player classical value");
      o.check(q > prev && q < 0.5, "N=" + std::to_string(n) + " increasing and below 1/2");
      o.detail << "N=" << n << ": " << q << " vs " << c << "; ";
      prev = q;
    }
  });

  criterion(5, "odd-N collapse", [](Outcome& o) {
    for (unsigned n : {3u, 5u}) {
      const double q = optimize_symmetric(minority_game(n)).payoff;
      const double c = classical_random_payoff(n);
      o.check(q <= c + 1e-3, "N=" + std::to_string(n) + " optimum at most the classical value");
      o.detail << "N=" << n << ": " << q << " vs " << c << "; ";
    }
  });

  criterion(6, "decoherence", [](Outcome& o) {
    const auto endpoints = ex::mg_decoherence(4, ChannelKind::PhaseDamping, {0.0, 1.0});
    o.check(std::abs(column(endpoints, 0, 2) - 0.25) <= 1e-3, "dephasing p=0 gives 0.25");
    o.check(std::abs(column(endpoints, 1, 2) - 0.125) <= 1e-3, "dephasing p=1 gives 0.125");
    for (double p : {0.25, 0.5, 0.75}) {
      const auto cert = certify_nash(with_noise(minority_game(4), ChannelKind::PhaseDamping, p), mg_ne_profile(4), 1e-3);
      o.check(cert.certified, "certified under dephasing at p=" + std::to_string(p));
      o.detail << "gain@" << p << '=' << cert.max_gain() << "; ";
    }

    const auto grid = ex::default_p_grid();
    const auto deph = ex::mg_decoherence(4, ChannelKind::PhaseDamping, grid);
    for (auto kind : {ChannelKind::Depolarizing, ChannelKind::BitFlip, ChannelKind::PhaseFlip, ChannelKind::BitPhaseFlip}) {
      const std::string name(channel_name(kind));
      const auto curve = ex::mg_decoherence(4, kind, grid);
      bool monotone = true, below = true;
      double worst_rise = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = column(curve, i, 2);
        if (i > 0 && v > column(curve, i - 1, 2) + 1e-12) {
          monotone = false;
          worst_rise = std::max(worst_rise, v - column(curve, i - 1, 2));
        }
        if (grid[i] < 0.5 && v > column(deph, i, 2) + 1e-12) below = false;
      }
      o.check(monotone, name + " non-increasing on the default grid (largest rise " + std::to_string(worst_rise) + ")");
      o.check(below, name + " at or below dephasing for p < 0.5");
      o.detail << name << " p=1: " << column(curve, grid.size() - 1, 2) << "; ";
    }
  });

  criterion(7, "index sum rule", [](Outcome& o) {
    const double expected[4] = {0.25, 0.125, 0.0, 0.125};
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            const std::vector<int> idx{a, b, c, d};
            for (double v : play(minority_game(4), mg_ne_mixed_profile(4, idx)))
              worst = std::max(worst, std::abs(v - expected[(a + b + c + d) % 4]));
          }
    o.check(worst <= 1e-3, "payoffs follow the index sum mod 4");
    o.detail << "256 index combinations, max deviation " << worst << ' ';
  });

  criterion(8, "coordinated rock-paper-scissors", [](Outcome& o) {
    const std::uint64_t rounds = 100000;
    for (auto [mode, target] : {std::pair{Coordination::Entangled, 1.0 / 3}, std::pair{Coordination::Independent, 1.0 / 9}}) {
      const auto s = ex::rps(mode, rounds, 20240101);
      const double band = 3 * std::sqrt(target * (1 - target) / rounds);
      const char* name = mode == Coordination::Entangled ? "entangled" : "independent";
      o.check(std::abs(s.win_probability - target) <= band, std::string(name) + " within 3 sigma");
      o.detail << name << ' ' << s.win_probability << " (target " << target << " +/- " << band << "); ";
    }
  });

  criterion(9, "classical minority game", [](Outcome& o) {
    o.check(mg::strategy_space_size(2) == 16, "m=2 gives 16");
    o.check(mg::strategy_space_size(5) == 4294967296ULL, "m=5 gives 2^32");
    const auto big = mg::strategy_space_size(10);
    o.check(big > boost::multiprecision::pow(boost::multiprecision::cpp_int(10), 300), "m=10 exceeds 10^300");

    double lo = 1.0, hi = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto r = mg::run({101, 3, 2}, 10000 + mg::default_burn_in(3), mg::default_burn_in(3), seed);
      lo = std::min(lo, r.mean_fraction);
      hi = std::max(hi, r.mean_fraction);
    }
    o.check(lo >= 0.47 && hi <= 0.53, "mean attendance fraction in [0.47, 0.53]");
    o.detail << "attendance fraction range [" << lo << ", " << hi << "]; ";

    ex::ClassicalSweepConfig cfg;
    const auto t = ex::mg_classical(cfg, 4);
    std::vector<double> sigma;
    for (std::size_t i = 0; i < t.rows.size(); ++i) sigma.push_back(column(t, i, 1));
    const auto argmin = static_cast<std::size_t>(std::min_element(sigma.begin(), sigma.end()) - sigma.begin());
    o.check(argmin > 0 && argmin + 1 < sigma.size(), "sigma(m) minimum is interior");
    o.detail << "sigma(m):";
    for (double s : sigma) o.detail << ' ' << s;
    o.detail << "; minimum at m=" << argmin + 1 << ' ';
  });

  criterion(10, "channel validity", [](Outcome& o) {
    // A fixed, generic full-rank two-qubit state.
    const std::vector<cplx> e{{0.4, 0},     {0.1, 0.05},  {0.02, -0.1}, {0.05, 0.03}, {0.1, -0.05},  {0.25, 0},
                              {-0.03, 0.04}, {0.01, 0.02}, {0.02, 0.1},  {-0.03, -0.04}, {0.2, 0},    {0.06, -0.01},
                              {0.05, -0.03}, {0.01, -0.02}, {0.06, 0.01}, {0.15, 0}};
    const DensityMatrix rho(4, e);
    double completeness = 0.0, trace = 0.0, min_eig = 1.0;
    int cases = 0;
    for (auto kind : kAllChannelKinds)
      for (int i = 0; i <= 10; ++i) {
        const auto ch = make_channel(kind, i / 10.0);
        const auto out = apply_channel_all(ch, rho);
        completeness = std::max(completeness, ch.completeness_residual());
        trace = std::max(trace, std::abs(out.trace() - 1.0));
        min_eig = std::min(min_eig, min_eigenvalue(out));
        ++cases;
      }
    o.check(completeness <= 1e-10, "completeness within 1e-10");
    o.check(trace <= 1e-12, "trace within 1e-12");
    o.check(min_eig >= -1e-10, "min eigenvalue >= -1e-10");
    o.detail << cases << " channel/p cases, completeness " << completeness << ", trace " << trace << ", min eigenvalue "
             << min_eig << ' ';
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
