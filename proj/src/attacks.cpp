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

#include <array>
#include <string>

#include "fedchain/beacon.hpp"
#include "fedchain/common.hpp"
#include "fedchain/ledger.hpp"
#include "fedchain/sim.hpp"

namespace fedchain::sim {

namespace {

const AccountId kAttacker = "adversary";
const AccountId kAttackerAlt = "adversary-alt";
const AccountId kHonest = "honest";
constexpr Tokens kFunds = 100;

const ledger::KeyRing& attack_keys() {
  static const ledger::KeyRing keys = [] {
    const std::array<AccountId, 2> ids{kAttacker, kHonest};
    return ledger::KeyRing::derive(seed_from_u64(0x5eed), ids);
  }();
  return keys;
}

ledger::Block signed_block(const ledger::Block& parent, const AccountId& leader, std::vector<ledger::Transaction> txs) {
  auto b = ledger::make_block(parent, 0, leader, std::move(txs));
  ledger::sign_block(b, attack_keys());
  return b;
}

}  // namespace

DoubleSpendOutcome scripted_double_spend(const std::vector<bool>& adversarial_slots) {
  const std::size_t kappa = adversarial_slots.size();
  if (kappa == 0) fail(Errc::DomainError, "attack window must have at least one slot");

  std::vector<AccountId> leaders;
  for (bool a : adversarial_slots) leaders.push_back(a ? kAttacker : kHonest);
  ledger::ScheduleBook book(kappa);
  book.set_epoch(0, leaders, 0);

  const auto genesis = ledger::make_genesis("origin");
  ledger::ForkContext ctx{&book, &attack_keys(), 0, genesis.digest(), {}};
  ctx.anchor_state.stake.credit(kAttacker, kFunds);
  ctx.anchor_state.stake.credit(kHonest, kFunds);

  // C1 spends the attacker's funds into the escrow; C2 sends the same funds elsewhere.
  const ledger::Transaction spend{"spend", ledger::TxKind::cross_lock, kAttacker, "SC1", kFunds, {}};
  const auto revert = ledger::make_payment("spend-alt", kAttacker, kAttackerAlt, kFunds);

  std::array<ledger::Fork, 2> forks{ledger::Fork{{genesis}}, ledger::Fork{{genesis}}};
  bool spent = false;
  for (std::size_t i = 0; i < kappa; ++i) {
    if (adversarial_slots[i]) {
      std::vector<ledger::Transaction> t1, t2;
      if (!spent) {
        t1.push_back(spend);
        t2.push_back(revert);
        spent = true;
      }
      forks[0].blocks.push_back(signed_block(forks[0].tip(), kAttacker, std::move(t1)));
      forks[1].blocks.push_back(signed_block(forks[1].tip(), kAttacker, std::move(t2)));
      continue;
    }
    // The honest leader sees both forks, extends its fork choice, and the
    // attacker can only pad the other one with an EMPTY block.
    const std::size_t pick = ledger::fork_choice_index(forks, ctx);
    forks[pick].blocks.push_back(signed_block(forks[pick].tip(), kHonest, {}));
    forks[1 - pick].blocks.push_back(ledger::make_empty_block(forks[1 - pick].tip(), 0));
  }

  // Grind C2's last block until it wins the tie-break.
  if (forks[1].tip().header.leader == kAttacker && !(forks[1].tip_digest() < forks[0].tip_digest())) {
    const ledger::Block parent = forks[1].blocks[forks[1].length() - 2];
    auto txs = forks[1].tip().transactions;
    for (std::uint64_t nonce = 0; !(forks[1].tip_digest() < forks[0].tip_digest()); ++nonce) {
      auto with_nonce = txs;
      with_nonce.push_back(ledger::make_payment("nonce-" + std::to_string(nonce), kAttacker, kAttacker, 0));
      forks[1].blocks.back() = signed_block(parent, kAttacker, std::move(with_nonce));
    }
  }

  DoubleSpendOutcome out;
  const auto observed = ledger::signed_heights(forks, book, attack_keys());
  out.spend_fork_valid = ledger::valid_fork(forks[0], ctx, observed);
  out.revert_fork_valid = ledger::valid_fork(forks[1], ctx, observed);
  out.conflicting_blocks = ledger::common_prefix_depth(forks[0], forks[1]);
  const bool reverts = out.spend_fork_valid && out.revert_fork_valid && ledger::fork_choice_index(forks, ctx) == 1;
  out.succeeded = reverts && out.conflicting_blocks >= kappa;
  return out;
}

DoubleSpendTrials double_spend_trials(double gamma, std::size_t kappa, std::int64_t trials, const Seed& seed) {
  if (!(gamma > 0.0 && gamma <= 1.0)) fail(Errc::DomainError, "gamma must lie in (0, 1]");
  if (kappa == 0 || trials < 1) fail(Errc::DomainError, "kappa and trials must be positive");
  constexpr Tokens kTotal = 1'000'000;
  const auto adversary = static_cast<Tokens>(std::llround((1.0 - gamma) * static_cast<double>(kTotal)));
  ledger::StakeLedger stake;
  if (adversary > 0) stake.credit(kAttacker, adversary);
  if (kTotal - adversary > 0) stake.credit(kHonest, kTotal - adversary);
  const beacon::StakeDistribution dist(stake);

  DoubleSpendTrials out;
  out.trials = trials;
  std::vector<bool> pattern(kappa);
  for (std::int64_t t = 0; t < trials; ++t) {
    ByteWriter w;
    w.digest(seed);
    w.str("double-spend");
    w.i64(t);
    const Seed trial_seed = w.hash();
    bool all = true;
    for (std::size_t i = 0; i < kappa; ++i) {
      pattern[i] = beacon::fts_select(trial_seed, i, dist) == kAttacker;
      all = all && pattern[i];
    }
    if (all) ++out.all_adversarial_windows;
    if (scripted_double_spend(pattern).succeeded) {
      ++out.successes;
      if (!all) ++out.success_outside_adversarial_windows;
    }
  }
  return out;
}

}  // namespace fedchain::sim
