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

#include "fedchain/beacon.hpp"

#include <algorithm>

namespace fedchain::beacon {

CommitRevealBeacon::CommitRevealBeacon(std::uint64_t epoch, std::vector<AccountId> committee_seats,
                                       std::uint64_t reveal_start_slot)
    : epoch_(epoch), reveal_start_(reveal_start_slot), seats_(std::move(committee_seats)) {
  if (seats_.empty()) fail(Errc::DomainError, "beacon committee must have at least one seat");
  for (const auto& m : seats_) ++seat_count_[m];
}

Digest CommitRevealBeacon::commitment_for(std::uint64_t epoch, const AccountId& member,
                                          const Digest& value) {
  return ByteWriter().str("commit").u64(epoch).str(member).digest(value).hash();
}

void CommitRevealBeacon::commit(const AccountId& member, const Digest& commitment, std::uint64_t slot) {
  if (!seat_count_.contains(member))
    fail(Errc::NotCommitteeMember, member + " is not on the epoch committee");
  if (slot >= reveal_start_) fail(Errc::PhaseViolation, "commit after the reveal phase started");
  contributions_[member] = Contribution{commitment, std::nullopt};
}

void CommitRevealBeacon::contribute(const AccountId& member, const Digest& value, std::uint64_t slot) {
  if (!seat_count_.contains(member))
    fail(Errc::NotCommitteeMember, member + " is not on the epoch committee");
  if (slot < reveal_start_) fail(Errc::PhaseViolation, "reveal during the commit phase");
  auto it = contributions_.find(member);
  if (it == contributions_.end() || it->second.value ||
      commitment_for(epoch_, member, value) != it->second.commitment) {
    if (it != contributions_.end() && !it->second.value) contributions_.erase(it);
    flagged_.insert(member);
    fail(Errc::RevealMismatch, "reveal by " + member + " does not match its commitment");
  }
  it->second.value = value;
  recompute_seed();
}

std::size_t CommitRevealBeacon::revealed_seats() const noexcept {
  std::size_t n = 0;
  for (const auto& [m, c] : contributions_) {
    if (c.value) n += seat_count_.at(m);
  }
  return n;
}

std::vector<AccountId> CommitRevealBeacon::withheld() const {
  std::vector<AccountId> out;
  for (const auto& [m, c] : contributions_) {
    if (!c.value) out.push_back(m);
  }
  return out;
}

void CommitRevealBeacon::recompute_seed() {
  if (revealed_seats() < quorum()) return;
  std::vector<Digest> values;
  for (const auto& [_, c] : contributions_) {
    if (c.value) values.push_back(*c.value);
  }
  std::sort(values.begin(), values.end());
  ByteWriter w;
  w.str("seed").u64(epoch_);
  for (const auto& v : values) w.digest(v);
  seed_ = w.hash();
}

StakeDistribution::StakeDistribution(const ledger::StakeLedger& ledger) {
  for (const auto& [account, balance] : ledger.balances()) {
    if (balance <= 0) continue;
    total_ += static_cast<std::uint64_t>(balance);
    owners_.push_back(account);
    upper_.push_back(total_);
  }
}

const AccountId& StakeDistribution::owner_of(std::uint64_t token_index) const {
  auto it = std::upper_bound(upper_.begin(), upper_.end(), token_index);
  return owners_[static_cast<std::size_t>(it - upper_.begin())];
}

AccountId fts_select(const Seed& seed, std::uint64_t counter, const StakeDistribution& stake) {
  if (stake.total() == 0) fail(Errc::EmptyLedger, "fts_select: ledger holds no stake");
  const Digest draw = ByteWriter().digest(seed).u64(counter).hash();
  return stake.owner_of(draw.mod(stake.total()));
}

AccountId fts_select(const Seed& seed, std::uint64_t counter, const ledger::StakeLedger& ledger) {
  return fts_select(seed, counter, StakeDistribution(ledger));
}

EpochSchedule build_schedule(const Seed& seed, const ledger::StakeLedger& ledger, std::uint64_t slots,
                             std::uint64_t committee_size, std::uint64_t epoch) {
  if (slots == 0 || committee_size == 0)
    fail(Errc::DomainError, "build_schedule: slots and committee_size must be >= 1");
  const StakeDistribution stake(ledger);
  EpochSchedule s;
  s.epoch = epoch;
  s.leaders.reserve(slots);
  for (std::uint64_t i = 0; i < slots; ++i) s.leaders.push_back(fts_select(seed, i, stake));
  for (std::uint64_t i = slots; i < slots + committee_size; ++i)
    s.committee.push_back(fts_select(seed, i, stake));
  return s;
}

}  // namespace fedchain::beacon
