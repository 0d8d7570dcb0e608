// Copyright 2026 The Fedchain Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "doctest.h"
#include "fedchain/analytics.hpp"
#include "fedchain/sim.hpp"
#include "support.hpp"

using namespace fedchain;
using namespace fedchain::sim;
using testing::errc_of;

namespace {

ScenarioConfig standard_scenario(int level, AdversaryKind kind, RewardScheme scheme, bool chains = false) {
  ScenarioConfig c;
  c.name = "standard";
  c.adversary = kind;
  c.adversary_budget = 500.0 * level;
  c.corrupted = 10 * static_cast<std::size_t>(level);
  c.reward_scheme = scheme;
  c.run_chains = chains;
  c.rng_seed = seed_from_u64(2026);
  return c;
}

std::map<std::pair<std::uint64_t, std::size_t>, EpochMetrics> by_key(const std::vector<EpochMetrics>& rows) {
  std::map<std::pair<std::uint64_t, std::size_t>, EpochMetrics> out;
  for (const auto& r : rows) out[{r.epoch, r.chain}] = r;
  return out;
}

void check_shares(const std::vector<EpochMetrics>& rows, const std::vector<double>& want) {
  std::map<std::uint64_t, double> totals;
  for (const auto& r : rows) totals[r.epoch] += r.total_stake;
  for (const auto& r : rows) CHECK(std::abs(r.total_stake / totals[r.epoch] - want[r.chain]) <= 0.01);
}

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("medium config gives ten rows per chain") {
  const auto rows = run_scenario(standard_scenario(2, AdversaryKind::fixed_budget, RewardScheme::fixed, true));
  CHECK(rows.size() == 30);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].epoch == i / 3);
    CHECK(rows[i].chain == i % 3);
  }
}

TEST_CASE("stake shares track reward shares every epoch") {
  check_shares(run_scenario(standard_scenario(1, AdversaryKind::none, RewardScheme::fixed)), {1.0 / 6, 1.0 / 3, 1.0 / 2});
  check_shares(run_scenario(standard_scenario(1, AdversaryKind::none, RewardScheme::dynamic)), {1.0 / 3, 1.0 / 3, 1.0 / 3});
}

TEST_CASE("dynamic rewards follow the leader optimum of the current budgets") {
  const auto rows = run_scenario(standard_scenario(1, AdversaryKind::none, RewardScheme::dynamic));
  for (const auto& r : rows) CHECK(r.reward > 0);
  std::map<std::uint64_t, std::vector<double>> per_epoch;
  for (const auto& r : rows) per_epoch[r.epoch].push_back(r.reward);
  for (const auto& [_, rewards] : per_epoch) {
    CHECK(rewards[0] == rewards[1]);
    CHECK(rewards[1] == rewards[2]);
  }
}

TEST_CASE("adversary arithmetic") {
  CHECK(fixed_budget_ratio(1500, 500) == doctest::Approx(0.25));
  const game::StrategyProfile s{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  const auto none = adaptive_ratios(s, {});
  for (double r : none) CHECK(r == 0.0);
  const auto all = adaptive_ratios(s, {0, 1, 2});
  for (double r : all) CHECK(r == doctest::Approx(1.0));
  const auto some = adaptive_ratios(s, {2});
  CHECK(some[0] == doctest::Approx(7.0 / 12));
  const auto fixed = apply_adversary(s, AdversaryView{AdversaryKind::fixed_budget, 12, {}});
  CHECK(fixed[0] == doctest::Approx(0.5));
  CHECK(fixed[2] == doctest::Approx(12.0 / 30));
}

TEST_CASE("corruption picks") {
  std::mt19937_64 rng(1);
  const std::vector<double> budgets{5, 9, 1, 7, 3};
  CHECK(pick_corrupted(budgets, 2, CorruptionPick::largest, rng) == std::vector<std::size_t>{1, 3});
  const auto r = pick_corrupted(budgets, 3, CorruptionPick::random, rng);
  CHECK(r.size() == 3);
  CHECK(std::is_sorted(r.begin(), r.end()));
  CHECK(std::adjacent_find(r.begin(), r.end()) == r.end());
  CHECK(pick_corrupted(budgets, 0, CorruptionPick::largest, rng).empty());
}

TEST_CASE("full corruption is flagged broken") {
  auto cfg = standard_scenario(1, AdversaryKind::adaptive, RewardScheme::fixed);
  cfg.corrupted = cfg.N;
  cfg.epochs = 2;
  for (const auto& r : run_scenario(cfg)) {
    CHECK(r.adversarial_ratio == doctest::Approx(1.0));
    CHECK(r.broken);
  }
  cfg.corrupted = 0;
  for (const auto& r : run_scenario(cfg)) {
    CHECK(r.adversarial_ratio == 0.0);
    CHECK_FALSE(r.broken);
  }
}

TEST_CASE("security row at the edges") {
  ScenarioConfig c;
  const auto zero = security_row(0.0, c);
  CHECK(zero.pr_cp == 0.0);
  CHECK(zero.pr_cq_exact == 0.0);
  const auto full = security_row(1.0, c);
  CHECK(full.pr_cp == 1.0);
  CHECK(std::isinf(full.confirmation_time_seconds));
  const auto mid = security_row(0.3, c);
  CHECK(mid.pr_cp == doctest::Approx(std::pow(0.3, 6)));
  CHECK(mid.confirmation_time_seconds == 120);
  CHECK(mid.throughput_reduction == doctest::Approx(0.45));
  CHECK(mid.pr_cq_exact == doctest::Approx(analytics::pr_cq_exact(0.7, 100, 30)));
  CHECK(mid.pr_cq_bound == doctest::Approx(analytics::pr_cq_bound(0.7, 100, 0.1)));
}

TEST_CASE("metrics follow from the measured ratio") {
  const auto cfg = standard_scenario(2, AdversaryKind::fixed_budget, RewardScheme::fixed);
  for (const auto& r : run_scenario(cfg)) {
    CHECK(r.adversarial_ratio == doctest::Approx(fixed_budget_ratio(r.total_stake, 1000)));
    const auto row = security_row(r.adversarial_ratio, cfg);
    CHECK(r.pr_cp == row.pr_cp);
    CHECK(r.pr_cq_exact == row.pr_cq_exact);
    CHECK(r.throughput_reduction == row.throughput_reduction);
    CHECK(r.broken == (r.adversarial_ratio >= 0.5));
  }
}

TEST_CASE("security worsens with adversary strength") {
  for (auto kind : {AdversaryKind::fixed_budget, AdversaryKind::adaptive}) {
    const auto weak = by_key(run_scenario(standard_scenario(1, kind, RewardScheme::fixed)));
    const auto medium = by_key(run_scenario(standard_scenario(2, kind, RewardScheme::fixed)));
    const auto strong = by_key(run_scenario(standard_scenario(3, kind, RewardScheme::fixed)));
    for (const auto& [k, w] : weak) {
      CHECK(w.pr_cp < medium.at(k).pr_cp);
      CHECK(medium.at(k).pr_cp < strong.at(k).pr_cp);
      CHECK(w.pr_cq_exact <= medium.at(k).pr_cq_exact);
      CHECK(medium.at(k).pr_cq_exact <= strong.at(k).pr_cq_exact);
    }
  }
}

TEST_CASE("static adversary: more system stake never hurts a chain") {
  for (int level = 1; level <= 3; ++level) {
    const auto rows = run_scenario(standard_scenario(level, AdversaryKind::fixed_budget, RewardScheme::fixed));
    for (const auto& a : rows)
      for (const auto& b : rows) {
        if (a.chain != b.chain || a.total_system_stake >= b.total_system_stake) continue;
        CHECK(a.pr_cp >= b.pr_cp);
        CHECK(a.pr_cq_exact >= b.pr_cq_exact);
      }
  }
}

TEST_CASE("CSV layout and determinism") {
  auto cfg = standard_scenario(2, AdversaryKind::adaptive, RewardScheme::dynamic, true);
  cfg.epochs = 3;
  const auto a = metrics_csv(run_scenario(cfg));
  const auto b = metrics_csv(run_scenario(cfg));
  CHECK(a == b);
  const auto header = a.substr(0, a.find('\n'));
  std::string joined;
  for (const auto& c : metrics_columns()) joined += (joined.empty() ? "" : ",") + c;
  CHECK(header == joined);
  CHECK(metrics_columns().front() == "epoch");
  CHECK(std::count(a.begin(), a.end(), '\n') == 1 + 9);
  cfg.rng_seed = seed_from_u64(7);
  CHECK(metrics_csv(run_scenario(cfg)) != a);
}

TEST_CASE("chains run and measure their empty blocks") {
  auto cfg = standard_scenario(1, AdversaryKind::fixed_budget, RewardScheme::fixed, true);
  cfg.epochs = 3;
  for (const auto& r : run_scenario(cfg)) {
    CHECK(r.measured_empty_fraction >= 0.0);
    CHECK(r.measured_empty_fraction <= 1.0);
  }
  cfg.adversary = AdversaryKind::none;
  for (const auto& r : run_scenario(cfg)) {
    CHECK(r.measured_empty_fraction == 0.0);
    CHECK_FALSE(r.halted);
  }
}

TEST_CASE("config validation") {
  ScenarioConfig c;
  CHECK_NOTHROW(c.validate());
  c.budget_low = 200;
  CHECK(errc_of([&] { c.validate(); }) == Errc::ConfigError);
  c = ScenarioConfig{};
  c.n_delta = c.N + 1;
  CHECK(errc_of([&] { c.validate(); }) == Errc::ConfigError);
  c = ScenarioConfig{};
  c.corrupted = c.N + 1;
  CHECK(errc_of([&] { c.validate(); }) == Errc::ConfigError);
  c = ScenarioConfig{};
  c.epochs = 0;
  CHECK(errc_of([&] { c.validate(); }) == Errc::ConfigError);
  c = ScenarioConfig{};
  c.delta_s = 1.0;
  CHECK(errc_of([&] { c.validate(); }) == Errc::ConfigError);
  c = ScenarioConfig{};
  c.fixed_rewards = {1, 2};
  CHECK(errc_of([&] { c.validate(); }) == Errc::ConfigError);
  CHECK(errc_of([&] { run_scenario(c); }) == Errc::ConfigError);
}

TEST_CASE("empty block attack") {
  consensus::ChainConfig chain;
  chain.chain_id = "T";
  const auto none = empty_block_attack(chain, 0.0, 2000, seed_from_u64(1));
  CHECK(none.empty_fraction == 0.0);
  const auto attack = empty_block_attack(chain, 0.3, 10000, seed_from_u64(2));
  CHECK(attack.empty.size() == 10000);
  CHECK(std::abs(attack.empty_fraction - 0.3) <= 0.02);
  CHECK(attack.halted_epochs == 0);
  const double theta = analytics::throughput_threshold(0.3, 100);
  CHECK(attack.windows(100) == 100);
  CHECK(static_cast<double>(attack.windows_exceeding(100, theta)) < 0.001 * attack.windows(100) + 1e-12);
}

TEST_CASE("scripted double spend") {
  // Honest leader in the third slot: the honest block goes to one fork only.
  CHECK_FALSE(scripted_double_spend({true, true, false, true}).succeeded);
  const auto forced = scripted_double_spend({true, true, true});
  CHECK(forced.succeeded);
  CHECK(forced.spend_fork_valid);
  CHECK(forced.revert_fork_valid);
  CHECK(forced.conflicting_blocks >= 3);
  CHECK_FALSE(scripted_double_spend({false, false, false}).succeeded);
  std::vector<bool> pattern(5);
  for (unsigned mask = 0; mask < 32; ++mask) {
    for (int i = 0; i < 5; ++i) pattern[i] = (mask >> i) & 1;
    CHECK(scripted_double_spend(pattern).succeeded == (mask == 31));
  }
}

TEST_CASE("double spend success rate follows pr_cp") {
  const auto t = double_spend_trials(0.7, 3, 20000, seed_from_u64(5));
  CHECK(t.success_outside_adversarial_windows == 0);
  CHECK(t.successes == t.all_adversarial_windows);
  CHECK(std::abs(t.rate() - 0.027) <= 3 * testing::binomial_sigma(0.027, 20000));
}

}  // TEST_SUITE
