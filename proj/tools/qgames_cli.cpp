// qgames: experiment runner for quantized games and the classical minority
// game. Tables go to CSV (default) or JSON; certificates are always JSON.

#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qgames/experiments.hpp"
#include "qgames/serialize.hpp"

namespace {

using namespace qgames;
namespace ex = qgames::experiments;

enum ExitCode { kOk = 0, kUsage = 1, kNumerical = 2, kNotCertified = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The config file has to be known before options are bound, since its
// values become the option defaults.
ExperimentConfig load_config(int argc, char** argv) {
  ExperimentConfig cfg;
  for (int i = 1; i < argc; ++i) {
    std::string path;
    if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) {
      path = argv[i + 1];
    } else if (std::strncmp(argv[i], "--config=", 9) == 0) {
      path = argv[i] + 9;
    }
    if (path.empty()) continue;
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    try {
      nlohmann::json::parse(in).get_to(cfg);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("bad config file " + path + ": " + e.what());
    }
  }
  return cfg;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw UsageError("cannot open output file: " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void emit(const ex::Table& table, const ExperimentConfig& cfg) {
  Output out(cfg.out);
  if (cfg.format == "json") {
    ex::write_json(table, out.stream());
  } else {
    ex::write_csv(table, out.stream());
  }
}

void emit_json(const nlohmann::json& doc, const ExperimentConfig& cfg) {
  Output out(cfg.out);
  out.stream() << doc.dump(2) << '\n';
}

unsigned single_player_count(const ExperimentConfig& cfg, unsigned fallback) {
  if (cfg.players.empty()) return fallback;
  if (cfg.players.size() != 1) throw UsageError("this experiment takes a single --players value");
  return cfg.players.front();
}

Coordination parse_mode(const std::string& s) {
  if (s == "entangled") return Coordination::Entangled;
  if (s == "independent") return Coordination::Independent;
  throw UsageError("unknown coordination mode: " + s);
}

mg::HistoryMode parse_history(const std::string& s) {
  if (s == "popular") return mg::HistoryMode::Popular;
  if (s == "winning") return mg::HistoryMode::Winning;
  throw UsageError("unknown history mode: " + s);
}

int run_certify(const ExperimentConfig& cfg) {
  const unsigned n = single_player_count(cfg, 4);
  GameSpec game = minority_game(n, cfg.gamma.value_or(std::numbers::pi / 2));
  if (cfg.p > 0.0) game = with_noise(game, parse_channel_kind(cfg.channel), cfg.p);

  StrategyProfile profile;
  if (cfg.preset == "mg-ne") {
    profile = mg_ne_profile(n, cfg.index);
  } else if (cfg.preset == "mg-identity") {
    profile = StrategyProfile::uniform(n, Move::pure(Su2Params{0.0, 0.0, 0.0}));
  } else if (cfg.preset == "mg-custom") {
    if (cfg.params.size() != 3 && cfg.params.size() != 3 * n)
      throw UsageError("--params takes 3 angles (symmetric) or 3 per player");
    for (unsigned k = 0; k < n; ++k) {
      const std::size_t o = cfg.params.size() == 3 ? 0 : 3 * k;
      profile.moves.push_back(Move::pure(Su2Params{cfg.params[o], cfg.params[o + 1], cfg.params[o + 2]}));
    }
  } else {
    throw UsageError("unknown preset: " + cfg.preset);
  }

  const NeCertificate cert = certify_nash(game, profile, cfg.epsilon);
  if (cfg.format == "csv") {
    ex::Table t{{"player", "baseline", "best", "gain", "theta", "alpha", "beta", "certified"}, {}};
    for (const auto& r : cert.reports)
      t.rows.push_back({std::int64_t{r.player}, r.baseline, r.best, r.gain, r.argmax.theta, r.argmax.alpha,
                        r.argmax.beta, std::int64_t{cert.certified}});
    emit(t, cfg);
  } else {
    emit_json(certificate_json(cert, game), cfg);
  }
  return cert.certified ? kOk : kNotCertified;
}

int run(const std::string& cmd, ExperimentConfig& cfg, bool series) {
  if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format must be csv or json");
  if (cmd == "pennyflip") {
    ex::PennyQ q;
    if (cfg.q_strategy == "hadamard") {
      q = ex::PennyQ::Hadamard;
    } else if (cfg.q_strategy == "identity") {
      q = ex::PennyQ::Identity;
    } else {
      throw UsageError("--q must be hadamard or identity");
    }
    emit(ex::pennyflip(cfg.a_grid.empty() ? ex::default_a_grid() : cfg.a_grid, q), cfg);
  } else if (cmd == "mg-sweep-n") {
    emit(ex::mg_sweep_n(cfg.players.empty() ? ex::default_n_list() : cfg.players, cfg.jobs), cfg);
  } else if (cmd == "mg-decoherence") {
    const ChannelKind kind = parse_channel_kind(cfg.channel);
    emit(ex::mg_decoherence(single_player_count(cfg, 4), kind, cfg.p_grid.empty() ? ex::default_p_grid() : cfg.p_grid,
                            cfg.jobs),
         cfg);
  } else if (cmd == "mg-entanglement") {
    emit(ex::mg_entanglement(single_player_count(cfg, 4),
                             cfg.gamma_grid.empty() ? ex::default_gamma_grid() : cfg.gamma_grid, cfg.jobs),
         cfg);
  } else if (cmd == "mg-classical") {
    ex::ClassicalSweepConfig sweep;
    sweep.n_agents = single_player_count(cfg, 101);
    if (!cfg.memory.empty()) sweep.memories = cfg.memory;
    sweep.strategies = cfg.strategies;
    sweep.steps = cfg.steps;
    sweep.burn_in = cfg.burn_in;
    if (!cfg.seeds.empty()) sweep.seeds = cfg.seeds;
    sweep.history_mode = parse_history(cfg.history_mode);
    if (series) {
      const unsigned m = sweep.memories.front();
      const mg::MgParams params{sweep.n_agents, m, sweep.strategies, sweep.history_mode};
      const auto stats = mg::run(params, sweep.steps, sweep.burn_in.value_or(mg::default_burn_in(m)), cfg.seed);
      if (cfg.format == "json") {
        emit_json(mg_summary_json(params, cfg.seed, stats), cfg);
      } else {
        emit(ex::mg_classical_series(stats), cfg);
      }
    } else {
      emit(ex::mg_classical(sweep, cfg.jobs), cfg);
    }
  } else if (cmd == "rps") {
    emit(ex::rps_table_view(ex::rps(parse_mode(cfg.mode), cfg.rounds, cfg.seed, cfg.jobs)), cfg);
  } else if (cmd == "certify") {
    return run_certify(cfg);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  CLI::App app{"Quantized-game simulations and minority-game experiments"};
  app.require_subcommand(1);
  std::string config_path;
  double gamma = cfg.gamma.value_or(std::numbers::pi / 2);
  std::uint64_t burn_in = 0;
  bool series = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config document; flags override it");
    sub->add_option("--seed", cfg.seed, "Base RNG seed")->capture_default_str();
    sub->add_option("--out", cfg.out, "Output path (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json")->capture_default_str();
    sub->add_option("--jobs", cfg.jobs, "Concurrent sweep points")->capture_default_str();
  };

  auto* penny = app.add_subcommand("pennyflip", "Meyer's PQ penny flip over a grid of P's flip weight");
  common(penny);
  penny->add_option("--a-grid", cfg.a_grid, "P's flip weights")->delimiter(',');
  penny->add_option("--q", cfg.q_strategy, "Q's move applied twice: hadamard or identity")->capture_default_str();

  auto* sweep = app.add_subcommand("mg-sweep-n", "Equilibrium payoff versus even player count");
  common(sweep);
  sweep->add_option("--players", cfg.players, "Even player counts")->delimiter(',');

  auto* deco = app.add_subcommand("mg-decoherence", "Equilibrium payoff versus decoherence probability");
  common(deco);
  deco->add_option("--players", cfg.players, "Player count (default 4)");
  deco->add_option("--channel", cfg.channel, "Channel kind")->capture_default_str();
  deco->add_option("--p-grid", cfg.p_grid, "Decoherence probabilities")->delimiter(',');

  auto* ent = app.add_subcommand("mg-entanglement", "Equilibrium payoff versus entangling parameter");
  common(ent);
  ent->add_option("--players", cfg.players, "Player count (default 4)");
  ent->add_option("--gamma-grid", cfg.gamma_grid, "Entangling parameters in [0, pi/2]")->delimiter(',');

  auto* classical = app.add_subcommand("mg-classical", "Agent-based minority game: sigma versus memory");
  common(classical);
  classical->add_option("--players", cfg.players, "Number of agents, odd (default 101)");
  classical->add_option("--memory", cfg.memory, "Memory lengths")->delimiter(',');
  classical->add_option("--strategies", cfg.strategies, "Tables per agent")->capture_default_str();
  classical->add_option("--steps", cfg.steps, "Rounds per run")->capture_default_str();
  auto* burn_opt = classical->add_option("--burn-in", burn_in, "Rounds discarded (default max(1000, 10*2^m))");
  classical->add_option("--seeds", cfg.seeds, "Run seeds")->delimiter(',');
  classical->add_option("--history", cfg.history_mode, "popular or winning")->capture_default_str();
  classical->add_flag("--series", series, "Emit one run's per-step series (CSV) or summary (JSON) using --seed");

  auto* rps = app.add_subcommand("rps", "Coordinated rock-paper-scissors win probability");
  common(rps);
  rps->add_option("--mode", cfg.mode, "entangled or independent")->capture_default_str();
  rps->add_option("--rounds", cfg.rounds, "Monte-Carlo rounds")->capture_default_str();

  auto* cert = app.add_subcommand("certify", "Numerical Nash-equilibrium certificate (JSON)");
  common(cert);
  cert->add_option("--preset", cfg.preset, "mg-ne, mg-identity or mg-custom")->capture_default_str();
  cert->add_option("--players", cfg.players, "Player count (default 4)");
  cert->add_option("--index", cfg.index, "Equilibrium family member for mg-ne")->capture_default_str();
  cert->add_option("--params", cfg.params, "theta,alpha,beta (or 3 per player) for mg-custom")->delimiter(',');
  auto* gamma_opt = cert->add_option("--gamma", gamma, "Entangling parameter");
  cert->add_option("--channel", cfg.channel, "Channel kind")->capture_default_str();
  cert->add_option("--p", cfg.p, "Decoherence probability")->capture_default_str();
  cert->add_option("--epsilon", cfg.epsilon, "Certification tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (gamma_opt->count() > 0) cfg.gamma = gamma;
  if (burn_opt->count() > 0) cfg.burn_in = burn_in;
  // Certificates default to JSON; CSV only on request.
  if (cert->parsed() && cert->get_option("--format")->count() == 0) cfg.format = "json";

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, cfg, series);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}
