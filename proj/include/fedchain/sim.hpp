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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fedchain/consensus.hpp"
#include "fedchain/game.hpp"
#include "fedchain/rng.hpp"

namespace fedchain::sim {

enum class RewardScheme : std::uint8_t { fixed, dynamic };
enum class AdversaryKind : std::uint8_t { none, fixed_budget, adaptive };
enum class CorruptionPick : std::uint8_t { largest, random };

struct ScenarioConfig {
  std::string name = "scenario";
  std::size_t N = 100;
  std::size_t M = 3;
  double budget_low = 50.0;
  double budget_high = 100.0;
  RewardScheme reward_scheme = RewardScheme::fixed;
  std::vector<double> fixed_rewards{10.0, 20.0, 30.0};
  AdversaryKind adversary = AdversaryKind::none;
  double adversary_budget = 0.0;    // B_A
  std::size_t corrupted = 0;        // N_A
  CorruptionPick pick = CorruptionPick::largest;
  double delta_s = 0.5;             // perturbation fraction drawn from U(0, delta_s)
  std::optional<std::size_t> n_delta;  // default N / 10
  std::size_t epochs = 10;
  std::uint64_t slots_per_epoch = 100;
  std::uint64_t committee_size = 10;
  Tokens deposit = 10;
  double slot_seconds = 20.0;
  double online_probability = 1.0;  // honest nodes
  std::int64_t kappa = 6;
  std::int64_t cq_window = 100;     // l
  double cq_mu = 0.7;
  double cq_delta = 0.1;
  bool run_chains = true;           // materialize ledgers and run every slot
  Seed rng_seed = seed_from_u64(1);

  std::size_t perturbed() const noexcept { return n_delta.value_or(N / 10); }
  /// Throws ConfigError.
  void validate() const;
};

struct EpochMetrics {
  std::uint64_t epoch = 0;
  std::size_t chain = 0;
  double total_stake = 0.0;  // follower stake on this chain
  double adversarial_ratio = 0.0;
  double pr_cp = 0.0;
  double pr_cq_bound = 0.0;
  double pr_cq_exact = 0.0;
  double confirmation_time_seconds = 0.0;
  double throughput_reduction = 0.0;  // Theta
  double reward = 0.0;
  double total_system_stake = 0.0;
  bool broken = false;  // adversarial ratio >= 0.5
  double measured_empty_fraction = 0.0;
  bool halted = false;  // beacon missed quorum
};

/// Column names of metrics_csv, in EpochMetrics declaration order.
const std::vector<std::string>& metrics_columns();
std::string metrics_csv(const std::vector<EpochMetrics>& rows);

/// Epoch loop: rewards, follower best responses, adversary, metrics, budget
/// perturbation. Rows are ordered by epoch, then chain.
std::vector<EpochMetrics> run_scenario(const ScenarioConfig& cfg);

/// B_A / (chain_stake + B_A): the adversary concentrates on the measured chain.
double fixed_budget_ratio(double chain_stake, double adversary_budget);

/// Indices of the stakeholders an adaptive adversary corrupts.
std::vector<std::size_t> pick_corrupted(const std::vector<double>& budgets, std::size_t count, CorruptionPick pick,
                                        std::mt19937_64& rng);

/// Per-chain share of stake held by the corrupted followers under profile s.
std::vector<double> adaptive_ratios(const game::StrategyProfile& s, const std::vector<std::size_t>& corrupted);

/// Inputs of the adversary step for one epoch.
struct AdversaryView {
  AdversaryKind kind = AdversaryKind::none;
  double budget = 0.0;
  std::vector<std::size_t> corrupted;
};
std::vector<double> apply_adversary(const game::StrategyProfile& s, const AdversaryView& adversary);

struct SecurityRow {
  double pr_cp = 0.0;
  double pr_cq_bound = 0.0;
  double pr_cq_exact = 0.0;
  double confirmation_time_seconds = 0.0;
  double throughput_reduction = 0.0;
};
/// Security and performance figures for one adversarial ratio in [0, 1].
SecurityRow security_row(double ratio, const ScenarioConfig& cfg);

struct EmptyBlockAttack {
  double empty_fraction = 0.0;
  std::vector<bool> empty;  // per slot
  std::uint64_t halted_epochs = 0;

  /// Non-overlapping windows of `l` slots whose empty fraction exceeds theta.
  std::size_t windows_exceeding(std::size_t l, double theta) const;
  std::size_t windows(std::size_t l) const { return l == 0 ? 0 : empty.size() / l; }
};

/// Runs `slots` slots of a chain where an adversary holding `ratio` of the
/// stake fills its slots with signed blocks carrying no transactions. Honest
/// leaders always have traffic to include.
EmptyBlockAttack empty_block_attack(const consensus::ChainConfig& config, double ratio, std::uint64_t slots,
                                    const Seed& seed);

struct DoubleSpendOutcome {
  bool succeeded = false;
  std::size_t conflicting_blocks = 0;  // common_prefix_depth of the final forks
  bool spend_fork_valid = false;
  bool revert_fork_valid = false;
};

/// Conflicting-fork attack over a kappa-slot window. The adversary signs a
/// block on both forks in each slot it leads: C1 carries the spend (a lock
/// into an escrow contract), C2 a conflicting payment of the same tokens.
/// Honest leaders extend whichever fork their fork choice picks, and the
/// adversary pads the other fork with EMPTY blocks. Succeeds when both forks
/// stay valid, diverge by at least kappa blocks and fork choice settles on C2
/// (the adversary grinds C2's tip digest to win ties).
DoubleSpendOutcome scripted_double_spend(const std::vector<bool>& adversarial_slots);

/// Success rate over `trials` independent windows whose leaders are drawn
/// by stake from per-trial seeds, with the adversary holding 1 - gamma.
struct DoubleSpendTrials {
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  std::int64_t all_adversarial_windows = 0;
  std::int64_t success_outside_adversarial_windows = 0;

  double rate() const noexcept { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
};
DoubleSpendTrials double_spend_trials(double gamma, std::size_t kappa, std::int64_t trials, const Seed& seed);

}  // namespace fedchain::sim
