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

#include "fedchain/consensus.hpp"

#include <set>
#include <utility>

#include "fedchain/analytics.hpp"

namespace fedchain::consensus {

namespace {

const NodeBehavior* behavior_of(const Behaviors& behaviors, const AccountId& id) {
  auto it = behaviors.find(id);
  return it == behaviors.end() ? nullptr : &it->second;
}

Digest random_digest(std::mt19937_64& rng) {
  ByteWriter w;
  for (int i = 0; i < 4; ++i) w.u64(rng());
  return w.hash();
}

// Pending transactions an honest leader can include, in order, without
// conflicting with the chain or with each other. Already-applied ones are
// dropped from `pending`.
std::vector<ledger::Transaction> take_includable(const ledger::LedgerState& chain,
                                                 std::vector<ledger::Transaction>& pending) {
  ledger::LedgerState scratch{chain.stake, {}, {}};
  std::vector<ledger::Transaction> chosen;
  std::vector<ledger::Transaction> kept;
  for (auto& tx : pending) {
    if (chain.tx_ids.contains(tx.id) || (tx.spv_proof && chain.mint_refs.contains(*tx.spv_proof))) continue;
    try {
      ledger::apply_transaction(scratch, tx);
      chosen.push_back(std::move(tx));
    } catch (const Error&) {
      kept.push_back(std::move(tx));
    }
  }
  pending = std::move(kept);
  return chosen;
}

std::vector<AccountId> draw_committee(const Seed& seed, const ledger::StakeLedger& stake, std::uint64_t seats) {
  const beacon::StakeDistribution dist(stake);
  std::vector<AccountId> out;
  for (std::uint64_t i = 0; i < seats; ++i) out.push_back(beacon::fts_select(seed, i, dist));
  return out;
}

}  // namespace

ChainState make_chain(const ChainConfig& config, const std::map<AccountId, Tokens>& balances,
                      ledger::KeyRing keys, const Seed& genesis_seed) {
  if (config.slots_per_epoch == 0 || config.committee_size == 0)
    fail(Errc::DomainError, "slots per epoch and committee size must be positive");
  if (config.reward < 0 || config.deposit < 0) fail(Errc::DomainError, "reward and deposit must be >= 0");
  if (!(config.slot_duration > 0.0)) fail(Errc::DomainError, "slot duration must be positive");

  ChainState s;
  s.chain_id = config.chain_id;
  s.book = ledger::ScheduleBook(config.slots_per_epoch);
  s.fork.blocks.push_back(ledger::make_genesis(config.chain_id));
  for (const auto& [id, amount] : balances) {
    if (amount < 0) fail(Errc::DomainError, "negative genesis balance for " + id);
    if (amount > 0) s.ledger.stake.credit(id, amount);
  }
  s.keys = std::move(keys);
  s.reward = config.reward;
  s.slot_duration = config.slot_duration;
  s.slots_per_epoch = config.slots_per_epoch;
  s.committee_size = config.committee_size;
  s.deposit = config.deposit;

  s.last_seed = genesis_seed;
  s.serving_committee = draw_committee(genesis_seed, s.ledger.stake, config.committee_size);
  return s;
}

BeaconOutcome run_beacon(const ChainState& state, const Behaviors& behaviors, std::mt19937_64& rng) {
  beacon::CommitRevealBeacon b(state.epoch, state.serving_committee);
  const std::set<AccountId> members(state.serving_committee.begin(), state.serving_committee.end());

  std::map<AccountId, Digest> values;
  for (const auto& m : members) {
    const auto* nb = behavior_of(behaviors, m);
    const bool online = bernoulli(rng, nb ? nb->online_probability : 1.0);
    const Digest value = random_digest(rng);
    if (!online) continue;
    b.commit(m, beacon::CommitRevealBeacon::commitment_for(state.epoch, m, value), 0);
    if (nb == nullptr || nb->honest || !nb->aborts_beacon) values.emplace(m, value);
  }
  for (const auto& [m, value] : values) b.contribute(m, value, 1);

  return BeaconOutcome{b.seed(), b.revealed_seats(), b.quorum(), b.withheld()};
}

void begin_epoch(ChainState& state, const std::optional<Seed>& seed) {
  if (state.epoch_open) fail(Errc::EpochInProgress, "epoch " + std::to_string(state.epoch) + " is still open");
  if (!seed) fail(Errc::BeaconUnavailable, "no beacon seed for epoch " + std::to_string(state.epoch));

  state.ledger.stake.unlock_all();
  state.schedule = beacon::build_schedule(*seed, state.ledger.stake, state.slots_per_epoch, state.committee_size,
                                          state.epoch);
  state.schedule.broadcast = true;
  state.last_seed = *seed;
  state.book.set_epoch(state.epoch, state.schedule.leaders, state.reward);

  const std::set<AccountId> leaders(state.schedule.leaders.begin(), state.schedule.leaders.end());
  for (const auto& leader : leaders) state.ledger.stake.lock(leader, state.deposit);
  for (const auto& member : state.serving_committee) state.ledger.stake.lock_all(member);

  state.slot = 0;
  state.epoch_open = true;
}

void halt_epoch(ChainState& state) {
  if (state.epoch_open) fail(Errc::EpochInProgress, "cannot halt an open epoch");
  // Heights stay aligned with slots: the frozen epoch is filled with EMPTY blocks.
  for (std::uint64_t i = 0; i < state.slots_per_epoch; ++i)
    state.fork.blocks.push_back(ledger::make_empty_block(state.fork.tip(), state.epoch));
  ByteWriter w;
  w.str("recovery");
  w.digest(state.last_seed);
  w.u64(state.epoch);
  state.serving_committee = draw_committee(w.hash(), state.ledger.stake, state.committee_size);
  ++state.halted_epochs;
  ++state.epoch;
}

void end_epoch(ChainState& state) {
  if (!state.epoch_open) fail(Errc::DomainError, "no open epoch to close");
  state.ledger.stake.unlock_all();
  state.serving_committee = state.schedule.committee;
  state.epoch_open = false;
  state.slot = 0;
  ++state.epoch;
}

SlotOutcome run_slot(ChainState& state, const Behaviors& behaviors, std::vector<ledger::Transaction>& pending,
                     std::mt19937_64& rng) {
  if (!state.epoch_open) fail(Errc::DomainError, "run_slot needs an open epoch");

  SlotOutcome out;
  out.leader = state.schedule.leaders.at(state.slot);
  const auto* nb = behavior_of(behaviors, out.leader);
  // A leader without a key cannot publish, which looks like being offline.
  const bool online = bernoulli(rng, nb ? nb->online_probability : 1.0) && state.keys.holds(out.leader);
  const ledger::Block& parent = state.fork.tip();

  ledger::Block block;
  if (!online) {
    out.kind = SlotKind::offline_empty;
    block = ledger::make_empty_block(parent, state.epoch);
  } else if (nb != nullptr && !nb->honest && nb->strategy == Strategy::withhold) {
    out.kind = SlotKind::adversarial_withheld;
    block = ledger::make_empty_block(parent, state.epoch);
  } else {
    const bool adversarial = nb != nullptr && !nb->honest;
    std::vector<ledger::Transaction> txs;
    if (!adversarial) txs = take_includable(state.ledger, pending);
    out.kind = adversarial ? SlotKind::adversarial_empty_content : SlotKind::honest_block;
    out.included = txs.size();
    block = ledger::make_block(parent, state.epoch, out.leader, std::move(txs));
    ledger::sign_block(block, state.keys);
  }
  if (!block.is_empty()) out.reward_credited = state.reward;
  ledger::append_block(state.fork, state.ledger, std::move(block), state.book, state.keys);

  if (++state.slot == state.slots_per_epoch) end_epoch(state);
  return out;
}

std::int64_t confirm_depth(const ChainState& /*state*/, double adversarial_ratio) {
  return analytics::confirm_depth(adversarial_ratio);
}

std::uint64_t depth_of(const ChainState& state, std::uint64_t height) {
  const std::uint64_t tip = state.fork.tip().height();
  if (height > tip) fail(Errc::DomainError, "height beyond the tip");
  return tip - height;
}

}  // namespace fedchain::consensus
