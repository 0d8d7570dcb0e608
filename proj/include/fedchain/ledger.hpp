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
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "fedchain/common.hpp"
#include "fedchain/digest.hpp"
#include "fedchain/rng.hpp"

namespace fedchain::ledger {

enum class TxKind : std::uint8_t { payment = 0, cross_lock = 1, cross_mint = 2, deposit_lock = 3 };

std::string_view to_string(TxKind kind) noexcept;

struct Transaction {
  std::string id;
  TxKind kind = TxKind::payment;
  AccountId sender;
  AccountId receiver;  // account or escrow contract id
  Tokens amount = 0;
  std::optional<Digest> spv_proof;  // set on cross_mint only

  /// amount >= 0, non-empty parties, and a proof reference iff cross_mint.
  bool well_formed() const noexcept;
  void encode(ByteWriter& out) const;
  /// Merkle leaf: sha256(0x00 || canonical encoding).
  Digest leaf() const;

  bool operator==(const Transaction&) const = default;
};

Transaction make_payment(std::string id, AccountId from, AccountId to, Tokens amount);

Digest merkle_root(std::span<const Transaction> txs);
/// Sibling digests from leaf to root; odd levels pair the last node with itself.
std::vector<Digest> merkle_path(std::span<const Transaction> txs, std::size_t index);
Digest merkle_root_from_path(const Digest& leaf, std::size_t index, std::span<const Digest> path);

/// Simulated signing: tag = sha256(secret || block digest). Only holders of
/// a secret can produce tags for that account.
class KeyRing {
 public:
  static KeyRing derive(const Seed& seed, std::span<const AccountId> accounts);

  void add(const AccountId& account, const Digest& secret) { secrets_[account] = secret; }
  bool holds(const AccountId& account) const { return secrets_.contains(account); }
  /// Keys for a subset of accounts, e.g. what an adversary controls.
  KeyRing restricted_to(std::span<const AccountId> accounts) const;

  std::optional<Digest> sign(const AccountId& account, const Digest& message) const;
  bool verify(const AccountId& account, const Digest& message, const Digest& tag) const;

 private:
  std::map<AccountId, Digest> secrets_;
};

struct BlockHeader {
  std::uint64_t height = 0;
  std::uint64_t epoch = 0;
  std::optional<AccountId> leader;  // nullopt = EMPTY block
  Digest parent_digest;
  Digest tx_root;
  std::optional<Digest> signature;

  /// sha256 over (height, epoch, leader, parent_digest, tx_root); the
  /// signature is not part of the digest.
  Digest digest() const;
  void encode(ByteWriter& out) const;

  bool operator==(const BlockHeader&) const = default;
};

struct Block {
  BlockHeader header;
  std::vector<Transaction> transactions;

  bool is_empty() const noexcept { return !header.leader.has_value(); }
  std::uint64_t height() const noexcept { return header.height; }
  Digest digest() const { return header.digest(); }

  bool operator==(const Block&) const = default;
};

Block make_genesis(const ChainId& chain);
Block make_empty_block(const Block& parent, std::uint64_t epoch);
/// Unsigned block on top of `parent`; see sign_block.
Block make_block(const Block& parent, std::uint64_t epoch, const AccountId& leader,
                 std::vector<Transaction> txs);
/// Returns false when `keys` has no secret for the block's leader.
bool sign_block(Block& block, const KeyRing& keys);

/// Leader list and block reward per epoch. Height h >= 1 is global slot h - 1.
class ScheduleBook {
 public:
  explicit ScheduleBook(std::uint64_t slots_per_epoch = 100);

  void set_epoch(std::uint64_t epoch, std::vector<AccountId> leaders, Tokens reward);
  bool has_epoch(std::uint64_t epoch) const { return epochs_.contains(epoch); }

  std::uint64_t slots_per_epoch() const noexcept { return slots_per_epoch_; }
  std::uint64_t epoch_of(std::uint64_t height) const noexcept;
  std::uint64_t slot_of(std::uint64_t height) const noexcept;
  std::uint64_t height_of(std::uint64_t epoch, std::uint64_t slot) const noexcept;

  /// nullptr when the epoch is unscheduled or height is genesis.
  const AccountId* leader_at(std::uint64_t height) const;
  Tokens reward_at(std::uint64_t height) const;

 private:
  struct Entry {
    std::vector<AccountId> leaders;
    Tokens reward = 0;
  };
  std::uint64_t slots_per_epoch_;
  std::map<std::uint64_t, Entry> epochs_;
};

/// Token balances plus epoch-scoped locks and escrow pools.
class StakeLedger {
 public:
  Tokens balance(const AccountId& a) const;
  Tokens locked(const AccountId& a) const;
  Tokens free(const AccountId& a) const { return balance(a) - locked(a); }
  Tokens escrowed(const AccountId& contract) const;

  /// Sum of balances; escrow pools are excluded.
  Tokens total() const noexcept { return total_; }
  Tokens total_escrowed() const noexcept;

  const std::map<AccountId, Tokens>& balances() const noexcept { return balances_; }
  const std::map<AccountId, Tokens>& escrow_pools() const noexcept { return escrow_; }

  void credit(const AccountId& a, Tokens amount);
  /// Throws InsufficientBalance when amount exceeds the free balance.
  void debit(const AccountId& a, Tokens amount);
  void transfer(const AccountId& from, const AccountId& to, Tokens amount);
  void move_to_escrow(const AccountId& from, const AccountId& contract, Tokens amount);
  /// Adds to the lock, capped at the balance; returns the amount actually locked.
  Tokens lock(const AccountId& a, Tokens amount);
  void lock_all(const AccountId& a);
  void unlock_all() { locked_.clear(); }
  /// Replaces every balance (epoch reconciliation); drops all locks.
  void reset_balances(const std::map<AccountId, Tokens>& balances);

  bool invariants_hold() const;

 private:
  std::map<AccountId, Tokens> balances_;
  std::map<AccountId, Tokens> locked_;
  std::map<AccountId, Tokens> escrow_;
  Tokens total_ = 0;
};

/// Everything a validator needs to decide whether a transaction conflicts
/// with the prefix it extends.
struct LedgerState {
  StakeLedger stake;
  std::unordered_set<std::string> tx_ids;
  std::set<Digest> mint_refs;
};

/// Applies one transaction; throws InvalidBlock (duplicate id, reused proof,
/// malformed) or InsufficientBalance.
void apply_transaction(LedgerState& state, const Transaction& tx);
/// Applies a block's transactions and credits `reward` to a non-EMPTY leader.
void apply_block(LedgerState& state, const Block& block, Tokens reward);
/// True when every transaction of `txs` applies cleanly on top of `state`.
bool conflict_free(const LedgerState& state, std::span<const Transaction> txs);

struct Fork {
  std::vector<Block> blocks;

  std::size_t length() const noexcept { return blocks.size(); }
  Digest tip_digest() const { return blocks.back().digest(); }
  const Block& tip() const { return blocks.back(); }
  /// Parent links and consecutive heights from 0.
  bool linked() const;
};

/// Validation context: leader schedule, key ring and the agreed anchor the
/// candidate forks extend (genesis by default).
struct ForkContext {
  const ScheduleBook* schedule = nullptr;
  const KeyRing* keys = nullptr;
  std::uint64_t anchor_height = 0;
  Digest anchor_digest;
  LedgerState anchor_state;
};

/// Header-level checks for a non-EMPTY block: scheduled leader, epoch, parent
/// link, transaction root and signature.
bool validate_header(const BlockHeader& header, const Block& parent, const ScheduleBook& schedule,
                     const KeyRing& keys);

/// Signed by the scheduled leader, linked to `parent`, root matching the
/// transactions. EMPTY blocks with no content are always valid.
bool validate_block(const Block& b, const ScheduleBook& schedule, const Block& parent,
                    const KeyRing& keys);
/// As above, additionally requiring no transaction conflicts with `prefix`.
bool validate_block(const Block& b, const ScheduleBook& schedule, const Block& parent,
                    const KeyRing& keys, const LedgerState& prefix);

/// Heights at which a validly signed block by the scheduled leader has been
/// seen. An EMPTY block at such a height stands for a withheld block that was
/// in fact broadcast, so it conflicts: EMPTY only stands in for a leader that published nothing.
std::set<std::uint64_t> signed_heights(std::span<const Fork> forks, const ScheduleBook& schedule,
                                       const KeyRing& keys);

bool valid_fork(const Fork& f, const ForkContext& ctx,
                const std::set<std::uint64_t>& observed_signed = {});

/// Longest valid fork; equal lengths resolve to the smallest tip digest.
/// Throws NoValidFork when no candidate is valid.
Fork fork_choice(std::span<const Fork> candidates, const ForkContext& ctx);
std::size_t fork_choice_index(std::span<const Fork> candidates, const ForkContext& ctx);

/// Appends a block (validated against the tip and `state`) and updates the
/// ledger. Throws InvalidBlock.
void append_block(Fork& fork, LedgerState& state, Block block, const ScheduleBook& schedule,
                  const KeyRing& keys);

/// Blocks of the shorter fork beyond the longest common prefix.
std::size_t common_prefix_depth(const Fork& f1, const Fork& f2);

}  // namespace fedchain::ledger
