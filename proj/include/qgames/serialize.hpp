#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qgames/classical_mg.hpp"
#include "qgames/equilibria.hpp"
#include "qgames/games.hpp"

namespace qgames {

/// {"game", "n_players", "payoffs": {"<bitstring>": [..]}} over all 2^N
/// outcomes; bitstrings list player 0 first.
nlohmann::json payoff_table_json(const GameSpec& game);

/// Inverse of the "payoffs" member: outcome index -> payoff vector.
std::vector<std::vector<double>> payoff_table_from_json(const nlohmann::json& doc);

nlohmann::json move_json(const Move& move);
nlohmann::json certificate_json(const NeCertificate& cert, const GameSpec& game);

nlohmann::json mg_summary_json(const mg::MgParams& params, std::uint64_t seed, const mg::MgStats& stats);

/// Every knob the experiment runner accepts. Loaded from a JSON document
/// whose keys match the field names; absent keys keep their defaults.
struct ExperimentConfig {
  std::string experiment;
  std::vector<unsigned> players;
  std::optional<double> gamma;
  std::vector<double> p_grid;
  std::vector<double> gamma_grid;
  std::vector<double> a_grid;
  std::string channel = "phase_damping";
  std::vector<unsigned> memory;
  unsigned strategies = 2;
  std::uint64_t steps = 20000;
  std::optional<std::uint64_t> burn_in;
  std::vector<std::uint64_t> seeds;
  std::uint64_t seed = 1;
  std::uint64_t rounds = 100000;
  std::string mode = "entangled";
  std::string history_mode = "popular";
  std::string preset = "mg-ne";
  std::vector<double> params;  // theta, alpha, beta for custom profiles
  int index = 0;
  double p = 0.0;
  double epsilon = 1e-3;
  std::string q_strategy = "hadamard";
  std::string out;
  std::string format = "csv";
  unsigned jobs = 1;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

}  // namespace qgames
