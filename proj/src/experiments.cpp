#include "qgames/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace qgames::experiments {
namespace {

std::string format_cell(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", std::get<double>(c));
  return buf;
}

std::int64_t as_int(std::uint64_t v) { return static_cast<std::int64_t>(v); }

}  // namespace

void write_csv(const Table& table, std::ostream& os) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
    os << '\n';
  }
}

void write_json(const Table& table, std::ostream& os) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit([&](const auto& v) { obj[table.columns[i]] = v; }, row[i]);
    }
    rows.push_back(obj);
  }
  os << rows.dump(2) << '\n';
}

std::vector<double> linspace(double lo, double hi, std::size_t points) {
  if (points == 0) return {};
  if (points == 1) return {lo};
  std::vector<double> v(points);
  for (std::size_t i = 0; i < points; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  v.back() = hi;
  return v;
}

std::vector<double> default_p_grid() { return linspace(0.0, 1.0, 21); }
std::vector<double> default_gamma_grid() { return linspace(0.0, std::numbers::pi / 2, 50); }
std::vector<double> default_a_grid() { return linspace(0.0, 1.0, 11); }
std::vector<unsigned> default_n_list() { return {4, 6, 8, 10}; }

Table pennyflip(const std::vector<double>& a_grid, PennyQ q) {
  const QuantumOperator u = q == PennyQ::Hadamard ? meyer_u(1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2)
                                                   : flip_matrices().no_flip;
  Table t{{"a", "prob_heads", "value_to_P"}, {}};
  for (double a : a_grid) {
    const auto r = play_penny_flip(u, penny_mix(a), u);
    t.rows.push_back({a, r.prob_heads, r.value_to_p});
  }
  return t;
}

Table mg_sweep_n(const std::vector<unsigned>& n_list, unsigned jobs) {
  for (unsigned n : n_list)
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("mg-sweep-n needs even N >= 4");
  const auto payoffs = parallel_map<double>(n_list.size(), jobs, [&](std::size_t i) {
    const unsigned n = n_list[i];
    return play(minority_game(n), mg_ne_profile(n))[0];
  });
  Table t{{"N", "quantum_ne_payoff", "classical_payoff", "pareto_bound"}, {}};
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const unsigned n = n_list[i];
    const double pareto = (n / 2.0 - 1.0) / n;
    t.rows.push_back({std::int64_t{n}, payoffs[i], classical_random_payoff(n), pareto});
  }
  return t;
}

Table mg_decoherence(unsigned n_players, ChannelKind kind, const std::vector<double>& p_grid, unsigned jobs) {
  for (double p : p_grid)
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("decoherence probability outside [0, 1]");
  const StrategyProfile profile = mg_ne_profile(n_players);
  const auto payoffs = parallel_map<double>(p_grid.size(), jobs, [&](std::size_t i) {
    const GameSpec game = with_noise(minority_game(n_players), kind, p_grid[i]);
    const DensityMatrix rho = run_pipeline(game, profile);
    check_density(rho, "final state at p = " + std::to_string(p_grid[i]));
    return expected_payoffs(rho, game)[0];
  });
  Table t{{"p", "channel", "payoff"}, {}};
  for (std::size_t i = 0; i < p_grid.size(); ++i)
    t.rows.push_back({p_grid[i], std::string(channel_name(kind)), payoffs[i]});
  return t;
}

Table mg_entanglement(unsigned n_players, const std::vector<double>& gamma_grid, unsigned jobs) {
  for (double g : gamma_grid)
    if (!(g >= 0.0 && g <= std::numbers::pi / 2 + 1e-12)) throw std::invalid_argument("gamma outside [0, pi/2]");
  const StrategyProfile profile = mg_ne_profile(n_players);
  const auto payoffs = parallel_map<double>(gamma_grid.size(), jobs, [&](std::size_t i) {
    return play(minority_game(n_players, gamma_grid[i]), profile)[0];
  });
  Table t{{"gamma", "payoff"}, {}};
  for (std::size_t i = 0; i < gamma_grid.size(); ++i) t.rows.push_back({gamma_grid[i], payoffs[i]});
  return t;
}

Table mg_classical(const ClassicalSweepConfig& cfg, unsigned jobs) {
  if (cfg.memories.empty() || cfg.seeds.empty()) throw std::invalid_argument("need at least one memory and one seed");
  const std::size_t n_seeds = cfg.seeds.size();
  struct Point {
    double sigma;
    double mean_fraction;
  };
  const auto points = parallel_map<Point>(cfg.memories.size() * n_seeds, jobs, [&](std::size_t i) {
    const unsigned m = cfg.memories[i / n_seeds];
    const mg::MgParams params{cfg.n_agents, m, cfg.strategies, cfg.history_mode};
    const auto stats = mg::run(params, cfg.steps, cfg.burn_in.value_or(mg::default_burn_in(m)), cfg.seeds[i % n_seeds]);
    return Point{stats.sigma, stats.mean_fraction};
  });

  Table t{{"m", "sigma_mean", "sigma_spread", "sigma2_over_n", "mean_fraction", "strategy_space_size"}, {}};
  for (std::size_t mi = 0; mi < cfg.memories.size(); ++mi) {
    double s = 0.0, f = 0.0;
    for (std::size_t k = 0; k < n_seeds; ++k) {
      s += points[mi * n_seeds + k].sigma;
      f += points[mi * n_seeds + k].mean_fraction;
    }
    const double mean = s / n_seeds;
    double ss = 0.0;
    for (std::size_t k = 0; k < n_seeds; ++k) ss += std::pow(points[mi * n_seeds + k].sigma - mean, 2);
    const double spread = n_seeds > 1 ? std::sqrt(ss / (n_seeds - 1)) : 0.0;
    t.rows.push_back({std::int64_t{cfg.memories[mi]}, mean, spread, mean * mean / cfg.n_agents, f / n_seeds,
                      mg::strategy_space_size(cfg.memories[mi]).str()});
  }
  return t;
}

Table mg_classical_series(const mg::MgStats& stats) {
  Table t{{"t", "attendance", "winning_side"}, {}};
  t.rows.reserve(stats.attendance.size());
  for (std::size_t i = 0; i < stats.attendance.size(); ++i)
    t.rows.push_back({as_int(i), std::int64_t{stats.attendance[i]}, std::int64_t{stats.winning_side[i]}});
  return t;
}

RpsSummary rps(Coordination mode, std::uint64_t rounds, std::uint64_t seed, unsigned jobs) {
  if (rounds == 0) throw std::invalid_argument("need at least one round");
  constexpr std::uint64_t kChunk = 10000;
  const std::size_t chunks = static_cast<std::size_t>((rounds + kChunk - 1) / kChunk);
  struct Tally {
    std::uint64_t wins = 0;
    double payoff = 0.0;
  };
  const auto tallies = parallel_map<Tally>(chunks, jobs, [&](std::size_t c) {
    Rng rng = derive_stream(seed, c);
    const std::uint64_t n = std::min(kChunk, rounds - c * kChunk);
    Tally t;
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto r = coord_rps_round(mode, std::nullopt, rng);
      t.wins += r.allies_win;
      t.payoff += r.payoffs[0];
    }
    return t;
  });
  Tally total;
  for (const auto& t : tallies) {
    total.wins += t.wins;
    total.payoff += t.payoff;
  }
  const double n = static_cast<double>(rounds);
  const double w = static_cast<double>(total.wins) / n;
  return {mode, rounds, seed, w, total.payoff / n, std::sqrt(w * (1.0 - w) / n)};
}

Table rps_table_view(const RpsSummary& s) {
  return {{"mode", "rounds", "seed", "win_probability", "standard_error", "mean_table3_payoff"},
          {{std::string(s.mode == Coordination::Entangled ? "entangled" : "independent"), as_int(s.rounds),
            as_int(s.seed), s.win_probability, s.standard_error, s.mean_table3_payoff}}};
}

}  // namespace qgames::experiments
