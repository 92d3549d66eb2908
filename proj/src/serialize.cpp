#include "qgames/serialize.hpp"

#include <stdexcept>

namespace qgames {

using nlohmann::json;

namespace {

std::string bitstring(std::uint64_t outcome, unsigned n) {
  std::string s(n, '0');
  for (unsigned k = 0; k < n; ++k)
    if ((outcome >> (n - 1 - k)) & 1U) s[k] = '1';
  return s;
}

json params_json(const Su2Params& p) { return {{"theta", p.theta}, {"alpha", p.alpha}, {"beta", p.beta}}; }

template <class T>
void read_opt(const json& j, const char* key, T& field) {
  if (j.contains(key)) j.at(key).get_to(field);
}

}  // namespace

json payoff_table_json(const GameSpec& game) {
  game.validate();
  if (game.n_players > 20) throw std::invalid_argument("payoff table export limited to 20 players");
  json payoffs = json::object();
  std::vector<double> row(game.n_players);
  for (std::uint64_t xi = 0; xi < (std::uint64_t{1} << game.n_players); ++xi) {
    game.payoff_fn(xi, row);
    payoffs[bitstring(xi, game.n_players)] = row;
  }
  return {{"game", game.name}, {"n_players", game.n_players}, {"payoffs", payoffs}};
}

std::vector<std::vector<double>> payoff_table_from_json(const json& doc) {
  const unsigned n = doc.at("n_players").get<unsigned>();
  const auto& payoffs = doc.at("payoffs");
  std::vector<std::vector<double>> table(std::size_t{1} << n);
  for (const auto& [key, value] : payoffs.items()) {
    if (key.size() != n) throw std::invalid_argument("payoff key has wrong length: " + key);
    std::uint64_t xi = 0;
    for (char c : key) {
      if (c != '0' && c != '1') throw std::invalid_argument("payoff key is not a bitstring: " + key);
      xi = (xi << 1) | static_cast<std::uint64_t>(c == '1');
    }
    table[xi] = value.get<std::vector<double>>();
    if (table[xi].size() != n) throw std::invalid_argument("payoff vector has wrong length for " + key);
  }
  for (const auto& row : table)
    if (row.empty()) throw std::invalid_argument("payoff table is missing outcomes");
  return table;
}

json move_json(const Move& move) {
  if (move.params()) return params_json(*move.params());
  json comps = json::array();
  for (const auto& wu : move.components()) {
    json m = json::array();
    for (std::size_t r = 0; r < 2; ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < 2; ++c) row.push_back({wu.unitary(r, c).real(), wu.unitary(r, c).imag()});
      m.push_back(row);
    }
    comps.push_back({{"weight", wu.weight}, {"unitary", m}});
  }
  return {{"components", comps}};
}

json certificate_json(const NeCertificate& cert, const GameSpec& game) {
  json profile = json::array();
  for (const auto& mv : cert.profile.moves) profile.push_back(move_json(mv));
  json reports = json::array();
  for (const auto& r : cert.reports) {
    reports.push_back({{"player", r.player},
                       {"baseline", r.baseline},
                       {"best", r.best},
                       {"gain", r.gain},
                       {"argmax", params_json(r.argmax)},
                       {"evaluations", r.evaluations}});
  }
  return {{"game", game.name},
          {"n_players", game.n_players},
          {"gamma", game.entangler.gamma},
          {"channel", game.channel ? json(std::string(channel_name(*game.channel))) : json(nullptr)},
          {"p", game.p},
          {"p_prime", game.p_prime},
          {"profile", profile},
          {"reports", reports},
          {"epsilon", cert.epsilon},
          {"max_gain", cert.max_gain()},
          {"certified", cert.certified}};
}

json mg_summary_json(const mg::MgParams& params, std::uint64_t seed, const mg::MgStats& stats) {
  return {{"N", params.n_agents},
          {"m", params.memory},
          {"s", params.strategies},
          {"seed", seed},
          {"history_mode", params.history_mode == mg::HistoryMode::Popular ? "popular" : "winning"},
          {"sigma", stats.sigma},
          {"mean_fraction", stats.mean_fraction}};
}

void to_json(json& j, const ExperimentConfig& c) {
  j = json{{"experiment", c.experiment},
           {"players", c.players},
           {"p_grid", c.p_grid},
           {"gamma_grid", c.gamma_grid},
           {"a_grid", c.a_grid},
           {"channel", c.channel},
           {"memory", c.memory},
           {"strategies", c.strategies},
           {"steps", c.steps},
           {"seeds", c.seeds},
           {"seed", c.seed},
           {"rounds", c.rounds},
           {"mode", c.mode},
           {"history_mode", c.history_mode},
           {"preset", c.preset},
           {"params", c.params},
           {"index", c.index},
           {"p", c.p},
           {"epsilon", c.epsilon},
           {"q_strategy", c.q_strategy},
           {"out", c.out},
           {"format", c.format},
           {"jobs", c.jobs}};
  if (c.gamma) j["gamma"] = *c.gamma;
  if (c.burn_in) j["burn_in"] = *c.burn_in;
}

void from_json(const json& j, ExperimentConfig& c) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  read_opt(j, "experiment", c.experiment);
  read_opt(j, "players", c.players);
  if (j.contains("gamma")) c.gamma = j.at("gamma").get<double>();
  read_opt(j, "p_grid", c.p_grid);
  read_opt(j, "gamma_grid", c.gamma_grid);
  read_opt(j, "a_grid", c.a_grid);
  read_opt(j, "channel", c.channel);
  read_opt(j, "memory", c.memory);
  read_opt(j, "strategies", c.strategies);
  read_opt(j, "steps", c.steps);
  if (j.contains("burn_in")) c.burn_in = j.at("burn_in").get<std::uint64_t>();
  read_opt(j, "seeds", c.seeds);
  read_opt(j, "seed", c.seed);
  read_opt(j, "rounds", c.rounds);
  read_opt(j, "mode", c.mode);
  read_opt(j, "history_mode", c.history_mode);
  read_opt(j, "preset", c.preset);
  read_opt(j, "params", c.params);
  read_opt(j, "index", c.index);
  read_opt(j, "p", c.p);
  read_opt(j, "epsilon", c.epsilon);
  read_opt(j, "q_strategy", c.q_strategy);
  read_opt(j, "out", c.out);
  read_opt(j, "format", c.format);
  read_opt(j, "jobs", c.jobs);
}

}  // namespace qgames
