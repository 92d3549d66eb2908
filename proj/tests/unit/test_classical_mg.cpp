#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "qgames/classical_mg.hpp"

using namespace qgames;
using namespace qgames::mg;

namespace {

// Population with hand-chosen tables, virtual values zero.
MgState hand_state(unsigned memory, std::vector<std::vector<std::vector<std::uint8_t>>> tables, std::uint32_t history,
                   HistoryMode mode = HistoryMode::Popular) {
  MgState s;
  s.params = {static_cast<unsigned>(tables.size()), memory, static_cast<unsigned>(tables.front().size()), mode};
  s.history = history;
  for (auto& agent_tables : tables) {
    Agent a;
    for (auto& t : agent_tables) a.tables.push_back({memory, t});
    a.virtual_values.assign(a.tables.size(), 0);
    s.agents.push_back(std::move(a));
  }
  return s;
}

}  // namespace

TEST_CASE("a table maps histories to outputs") {
  const StrategyTable table_a{2, {1, 0, 0, 1}};
  CHECK(table_a(0b00) == 1);
  CHECK(table_a(0b01) == 0);
  CHECK(table_a(0b10) == 0);
  CHECK(table_a(0b11) == 1);
}

TEST_CASE("population shape") {
  Rng rng(1);
  const auto s = init_population({101, 2, 2}, rng);
  CHECK(s.agents.size() == 101);
  std::size_t tables = 0;
  for (const auto& a : s.agents) {
    tables += a.tables.size();
    CHECK(a.virtual_values == std::vector<std::int64_t>{0, 0});
    for (const auto& t : a.tables) {
      CHECK(t.outputs.size() == 4);
      for (auto o : t.outputs) CHECK(o <= 1);
    }
  }
  CHECK(tables == 202);
  CHECK(s.history < 4);

  Rng r1(9), r2(9);
  const auto a = init_population({11, 3, 3}, r1), b = init_population({11, 3, 3}, r2);
  for (std::size_t i = 0; i < a.agents.size(); ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(a.agents[i].tables[j].outputs == b.agents[i].tables[j].outputs);
  CHECK(a.history == b.history);
}

TEST_CASE("invalid parameters") {
  Rng rng(1);
  CHECK_THROWS_AS(init_population({100, 2, 2}, rng), std::invalid_argument);
  CHECK_THROWS_AS(init_population({1, 2, 2}, rng), std::invalid_argument);
  CHECK_THROWS_AS(init_population({11, 0, 2}, rng), std::invalid_argument);
  CHECK_THROWS_AS(init_population({11, 2, 0}, rng), std::invalid_argument);
  CHECK_THROWS_AS(run({11, 2, 2}, 100, 100, 1), std::invalid_argument);
}

TEST_CASE("unanimity loses") {
  Rng rng(1);
  auto s = hand_state(1, {{{0, 0}}, {{0, 0}}, {{0, 0}}}, 0);
  advance(s, rng);
  CHECK(s.attendance.back() == 3);
  CHECK(s.winning_side.back() == 1);
  for (const auto& a : s.agents) CHECK(a.virtual_values[0] == 0);
}

TEST_CASE("three agents traced by hand") {
  // History 0. Agent 0 plays its second table (both score 0, so the tie is
  // broken at random; both tables say 0 here). Choices 0, 0, 1: side 1 wins.
  Rng rng(5);
  auto s = hand_state(1, {{{0, 1}, {0, 0}}, {{0, 0}, {0, 1}}, {{1, 1}, {1, 0}}}, 0);
  advance(s, rng);
  CHECK(s.attendance.back() == 2);
  CHECK(s.winning_side.back() == 1);
  CHECK(s.agents[0].virtual_values == std::vector<std::int64_t>{0, 0});
  CHECK(s.agents[1].virtual_values == std::vector<std::int64_t>{0, 0});
  CHECK(s.agents[2].virtual_values == std::vector<std::int64_t>{1, 1});
  // Popular side was 0, so the history stays 0.
  CHECK(s.history == 0);

  // Second round, winning-history variant: the history becomes 1.
  auto w = hand_state(1, {{{0, 1}}, {{0, 0}}, {{1, 1}}}, 0, HistoryMode::Winning);
  advance(w, rng);
  CHECK(w.history == 1);
  // From history 1 the choices are 1, 0, 1: side 0 wins, tables with output 0 score.
  advance(w, rng);
  CHECK(w.attendance.back() == 1);
  CHECK(w.winning_side.back() == 0);
  CHECK(w.agents[1].virtual_values[0] == 1);
  CHECK(w.agents[0].virtual_values[0] == 0);
  CHECK(w.agents[2].virtual_values[0] == 1);
}

TEST_CASE("conservation and virtual value bookkeeping") {
  Rng rng(8);
  auto s = init_population({51, 3, 3}, rng);
  for (int t = 0; t < 500; ++t) {
    const auto before = s;
    advance(s, rng);
    const auto att = s.attendance.back();
    CHECK(att <= 51);
    const unsigned winner = s.winning_side.back();
    CHECK((winner == 0 ? att : 51 - att) < 51.0 / 2);
    for (std::size_t a = 0; a < s.agents.size(); ++a)
      for (std::size_t i = 0; i < 3; ++i) {
        const auto gain = s.agents[a].virtual_values[i] - before.agents[a].virtual_values[i];
        CHECK(gain == (before.agents[a].tables[i](before.history) == winner ? 1 : 0));
      }
  }
  CHECK(s.t == 500);
}

TEST_CASE("runs are deterministic and single-sample sigma is zero") {
  const auto a = run({101, 3, 2}, 3000, 1000, 7);
  const auto b = run({101, 3, 2}, 3000, 1000, 7);
  CHECK(a.attendance == b.attendance);
  CHECK(a.sigma == b.sigma);
  CHECK(run({101, 3, 2}, 1001, 1000, 7).sigma == 0.0);
}

TEST_CASE("sigma is the population standard deviation after burn-in") {
  const auto r = run({31, 2, 2}, 600, 100, 3);
  REQUIRE(r.attendance.size() == 600);
  double mean = 0.0;
  for (std::size_t t = 100; t < 600; ++t) mean += r.attendance[t];
  mean /= 500;
  double var = 0.0;
  for (std::size_t t = 100; t < 600; ++t) var += (r.attendance[t] - mean) * (r.attendance[t] - mean);
  CHECK(r.sigma == doctest::Approx(std::sqrt(var / 500)).epsilon(1e-12));
  CHECK(r.mean_fraction == doctest::Approx(mean / 31).epsilon(1e-12));
}

TEST_CASE("attendance keeps fluctuating") {
  const auto r = run({101, 3, 2}, default_burn_in(3) + 10000, default_burn_in(3), 1);
  const std::vector<std::uint32_t> tail(r.attendance.begin() + default_burn_in(3), r.attendance.end());
  CHECK(smallest_period(tail, 100) == 0);
  CHECK(smallest_period({1, 2, 1, 2, 1, 2}, 5) == 2);
}

TEST_CASE("strategy space sizes") {
  CHECK(strategy_space_size(1) == 4);
  CHECK(strategy_space_size(2) == 16);
  CHECK(strategy_space_size(5) == 4294967296ULL);
  const auto big = strategy_space_size(10).str();
  CHECK(big.size() == 309);
  CHECK(big.substr(0, 6) == "179769");
  CHECK(default_burn_in(3) == 1000);
  CHECK(default_burn_in(10) == 10240);
}
