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
#include <set>
#include <vector>

#include "fedchain/common.hpp"
#include "fedchain/ledger.hpp"
#include "fedchain/rng.hpp"

namespace fedchain::beacon {

/// Per-epoch randomness. Implementations see committee input only, never
/// block content, so a leader cannot grind the seed of the epoch it is
/// scheduled in.
class RandomnessSource {
 public:
  virtual ~RandomnessSource() = default;
  virtual std::uint64_t epoch() const = 0;
  virtual std::optional<Seed> seed() const = 0;
};

/// Commit-reveal beacon standing in for PVSS.
///
/// Members commit to sha256(epoch || member || value) while slot <
/// reveal_start, then reveal. Each committee seat is one vote; a member
/// holding several seats reveals once. The seed is defined once revealed
/// seats reach a strict majority, ceil((seats + 1) / 2), and equals the
/// digest of the epoch and the sorted revealed values.
class CommitRevealBeacon final : public RandomnessSource {
 public:
  CommitRevealBeacon(std::uint64_t epoch, std::vector<AccountId> committee_seats,
                     std::uint64_t reveal_start_slot = 1);

  static Digest commitment_for(std::uint64_t epoch, const AccountId& member, const Digest& value);

  /// Throws NotCommitteeMember or PhaseViolation.
  void commit(const AccountId& member, const Digest& commitment, std::uint64_t slot);
  /// Reveal. Throws NotCommitteeMember, PhaseViolation, or RevealMismatch; a
  /// mismatching reveal is discarded and the member flagged.
  void contribute(const AccountId& member, const Digest& value, std::uint64_t slot);

  std::uint64_t epoch() const override { return epoch_; }
  std::optional<Seed> seed() const override { return seed_; }

  std::size_t seats() const noexcept { return seats_.size(); }
  std::size_t quorum() const noexcept { return (seats_.size() + 2) / 2; }
  std::size_t revealed_seats() const noexcept;
  const std::set<AccountId>& flagged() const noexcept { return flagged_; }
  /// Committed members that have not revealed (aborts once the epoch closes).
  std::vector<AccountId> withheld() const;

 private:
  struct Contribution {
    Digest commitment;
    std::optional<Digest> value;
  };

  void recompute_seed();

  std::uint64_t epoch_;
  std::uint64_t reveal_start_;
  std::vector<AccountId> seats_;
  std::map<AccountId, std::size_t> seat_count_;
  std::map<AccountId, Contribution> contributions_;
  std::set<AccountId> flagged_;
  std::optional<Seed> seed_;
};

struct EpochSchedule {
  std::uint64_t epoch = 0;
  std::vector<AccountId> leaders;    // one per slot
  std::vector<AccountId> committee;  // seats for the next epoch; repeats allowed
  bool broadcast = false;            // leader list published before slot 1
};

/// Cumulative stake ranges, ascending by account id.
class StakeDistribution {
 public:
  explicit StakeDistribution(const ledger::StakeLedger& ledger);

  std::uint64_t total() const noexcept { return total_; }
  const AccountId& owner_of(std::uint64_t token_index) const;

 private:
  std::vector<AccountId> owners_;
  std::vector<std::uint64_t> upper_;  // exclusive upper bound of each range
  std::uint64_t total_ = 0;
};

/// Owner of token sha256(seed || counter) mod total. Throws EmptyLedger.
AccountId fts_select(const Seed& seed, std::uint64_t counter, const ledger::StakeLedger& ledger);
AccountId fts_select(const Seed& seed, std::uint64_t counter, const StakeDistribution& stake);

/// leaders[i] = fts_select(seed, i); committee from counters slots .. slots + committee_size - 1.
EpochSchedule build_schedule(const Seed& seed, const ledger::StakeLedger& ledger, std::uint64_t slots,
                             std::uint64_t committee_size, std::uint64_t epoch = 0);

}  // namespace fedchain::beacon
