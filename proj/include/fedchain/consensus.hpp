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
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "fedchain/beacon.hpp"
#include "fedchain/common.hpp"
#include "fedchain/ledger.hpp"
#include "fedchain/rng.hpp"

namespace fedchain::consensus {

/// What an adversarial leader does with its slot.
enum class Strategy : std::uint8_t {
  empty_blocks,  // signed block with no transactions
  withhold,      // publishes nothing; the slot becomes EMPTY
};

struct NodeBehavior {
  AccountId stakeholder;
  bool honest = true;
  double online_probability = 1.0;
  Strategy strategy = Strategy::empty_blocks;  // ignored when honest
  bool aborts_beacon = true;                    // adversary withholds its reveal
};

/// Accounts missing from the map are honest and always online.
using Behaviors = std::map<AccountId, NodeBehavior>;

struct ChainConfig {
  ChainId chain_id;
  std::uint64_t slots_per_epoch = 100;
  std::uint64_t committee_size = 10;
  Tokens deposit = 10;
  Tokens reward = 0;
  double slot_duration = 20.0;
};

struct ChainState {
  ChainId chain_id;
  ledger::Fork fork;  // canonical
  ledger::LedgerState ledger;
  beacon::EpochSchedule schedule;
  ledger::ScheduleBook book;
  ledger::KeyRing keys;
  Tokens reward = 0;
  std::uint64_t epoch = 0;  // open epoch, or the next one to begin
  std::uint64_t slot = 0;
  bool epoch_open = false;
  double slot_duration = 20.0;
  std::uint64_t slots_per_epoch = 100;
  std::uint64_t committee_size = 10;
  Tokens deposit = 10;
  /// Seats that run the beacon for `epoch` and whose stake is locked while it is open.
  std::vector<AccountId> serving_committee;
  std::uint64_t halted_epochs = 0;
  Seed last_seed;  // most recent beacon output, genesis seed at first

  /// Sum of balances, escrow excluded.
  Tokens total_stake() const noexcept { return ledger.stake.total(); }
};

/// Genesis state. The first committee is drawn by stake from `genesis_seed`.
ChainState make_chain(const ChainConfig& config, const std::map<AccountId, Tokens>& balances,
                      ledger::KeyRing keys, const Seed& genesis_seed);

struct BeaconOutcome {
  std::optional<Seed> seed;
  std::size_t revealed_seats = 0;
  std::size_t quorum = 0;
  std::vector<AccountId> withheld;
};

/// Runs the commit-reveal beacon with the serving committee. Offline members
/// take no part; adversarial members that abort commit and then withhold
/// their reveal.
BeaconOutcome run_beacon(const ChainState& state, const Behaviors& behaviors, std::mt19937_64& rng);

/// Opens `state.epoch`: builds and broadcasts the schedule, locks each
/// scheduled leader's deposit and the serving committee's whole stake.
/// Throws EpochInProgress, or BeaconUnavailable when `seed` is empty (the
/// state is left untouched; see halt_epoch).
void begin_epoch(ChainState& state, const std::optional<Seed>& seed);

/// Records an epoch whose beacon failed: every slot gets an EMPTY block. The
/// next committee is drawn by stake from sha256("recovery" || last seed ||
/// epoch), so a committee that cannot reach quorum does not stall the chain
/// for good.
void halt_epoch(ChainState& state);

enum class SlotKind : std::uint8_t { honest_block, offline_empty, adversarial_empty_content, adversarial_withheld };

struct SlotOutcome {
  AccountId leader;
  SlotKind kind = SlotKind::honest_block;
  std::size_t included = 0;
  Tokens reward_credited = 0;

  /// Block carried no transactions (EMPTY or empty content).
  bool empty() const noexcept { return included == 0; }
  bool adversarial() const noexcept {
    return kind == SlotKind::adversarial_empty_content || kind == SlotKind::adversarial_withheld;
  }
};

/// Runs one slot of the open epoch and appends exactly one block. An honest
/// online leader includes every pending transaction that applies cleanly, in
/// order, and those are removed from `pending`. The epoch closes after its
/// last slot.
SlotOutcome run_slot(ChainState& state, const Behaviors& behaviors, std::vector<ledger::Transaction>& pending,
                     std::mt19937_64& rng);

/// Closes the open epoch and hands the committee over; run_slot calls it
/// after the last slot.
void end_epoch(ChainState& state);

/// Smallest kappa with ratio^kappa <= 0.001; ratio 0 gives 1.
std::int64_t confirm_depth(const ChainState& state, double adversarial_ratio);

/// Number of blocks on the canonical fork built on top of `height`.
std::uint64_t depth_of(const ChainState& state, std::uint64_t height);

}  // namespace fedchain::consensus
