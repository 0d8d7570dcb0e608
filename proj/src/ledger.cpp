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

#include "fedchain/ledger.hpp"

#include <algorithm>

namespace fedchain::ledger {

namespace {

Digest hash_node(const Digest& left, const Digest& right) {
  std::array<std::uint8_t, 1 + 2 * Digest::kSize> buf{};
  buf[0] = 0x01;
  std::copy(left.bytes().begin(), left.bytes().end(), buf.begin() + 1);
  std::copy(right.bytes().begin(), right.bytes().end(), buf.begin() + 1 + Digest::kSize);
  return sha256(buf);
}

std::vector<Digest> leaves(std::span<const Transaction> txs) {
  std::vector<Digest> out;
  out.reserve(txs.size());
  for (const auto& tx : txs) out.push_back(tx.leaf());
  return out;
}

std::vector<Digest> next_level(const std::vector<Digest>& level) {
  std::vector<Digest> up;
  up.reserve((level.size() + 1) / 2);
  for (std::size_t i = 0; i < level.size(); i += 2) {
    const Digest& right = i + 1 < level.size() ? level[i + 1] : level[i];
    up.push_back(hash_node(level[i], right));
  }
  return up;
}

void check_amount(Tokens amount) {
  if (amount < 0) fail(Errc::DomainError, "negative token amount");
}

}  // namespace

std::string_view to_string(TxKind kind) noexcept {
  switch (kind) {
    case TxKind::payment: return "payment";
    case TxKind::cross_lock: return "cross_lock";
    case TxKind::cross_mint: return "cross_mint";
    case TxKind::deposit_lock: return "deposit_lock";
  }
  return "unknown";
}

bool Transaction::well_formed() const noexcept {
  if (amount < 0 || id.empty() || sender.empty() || receiver.empty()) return false;
  return spv_proof.has_value() == (kind == TxKind::cross_mint);
}

void Transaction::encode(ByteWriter& out) const {
  out.str(id).u64(static_cast<std::uint64_t>(kind)).str(sender).str(receiver).i64(amount);
  if (spv_proof) {
    out.digest(*spv_proof);
  } else {
    out.raw({});
  }
}

Digest Transaction::leaf() const {
  ByteWriter w;
  const std::uint8_t tag = 0x00;
  w.raw(std::span(&tag, 1));
  encode(w);
  return w.hash();
}

Transaction make_payment(std::string id, AccountId from, AccountId to, Tokens amount) {
  return Transaction{std::move(id), TxKind::payment, std::move(from), std::move(to), amount, {}};
}

Digest merkle_root(std::span<const Transaction> txs) {
  if (txs.empty()) return Digest{};
  auto level = leaves(txs);
  while (level.size() > 1) level = next_level(level);
  return level.front();
}

std::vector<Digest> merkle_path(std::span<const Transaction> txs, std::size_t index) {
  if (index >= txs.size()) fail(Errc::DomainError, "merkle_path index out of range");
  std::vector<Digest> path;
  auto level = leaves(txs);
  while (level.size() > 1) {
    const std::size_t sibling = index ^ 1;
    path.push_back(sibling < level.size() ? level[sibling] : level[index]);
    level = next_level(level);
    index /= 2;
  }
  return path;
}

Digest merkle_root_from_path(const Digest& leaf, std::size_t index, std::span<const Digest> path) {
  Digest node = leaf;
  for (const auto& sibling : path) {
    node = (index & 1) ? hash_node(sibling, node) : hash_node(node, sibling);
    index /= 2;
  }
  return node;
}

KeyRing KeyRing::derive(const Seed& seed, std::span<const AccountId> accounts) {
  KeyRing ring;
  for (const auto& a : accounts) ring.add(a, ByteWriter().str("secret").digest(seed).str(a).hash());
  return ring;
}

KeyRing KeyRing::restricted_to(std::span<const AccountId> accounts) const {
  KeyRing ring;
  for (const auto& a : accounts) {
    if (auto it = secrets_.find(a); it != secrets_.end()) ring.add(a, it->second);
  }
  return ring;
}

std::optional<Digest> KeyRing::sign(const AccountId& account, const Digest& message) const {
  auto it = secrets_.find(account);
  if (it == secrets_.end()) return std::nullopt;
  return ByteWriter().digest(it->second).digest(message).hash();
}

bool KeyRing::verify(const AccountId& account, const Digest& message, const Digest& tag) const {
  auto expected = sign(account, message);
  return expected && *expected == tag;
}

void BlockHeader::encode(ByteWriter& out) const {
  out.u64(height).u64(epoch).str(leader.value_or("")).digest(parent_digest).digest(tx_root);
}

Digest BlockHeader::digest() const {
  ByteWriter w;
  encode(w);
  return w.hash();
}

Block make_genesis(const ChainId& chain) {
  Block g;
  g.header.parent_digest = ByteWriter().str("genesis").str(chain).hash();
  return g;
}

Block make_empty_block(const Block& parent, std::uint64_t epoch) {
  Block b;
  b.header.height = parent.height() + 1;
  b.header.epoch = epoch;
  b.header.parent_digest = parent.digest();
  return b;
}

Block make_block(const Block& parent, std::uint64_t epoch, const AccountId& leader,
                 std::vector<Transaction> txs) {
  Block b;
  b.header.height = parent.height() + 1;
  b.header.epoch = epoch;
  b.header.leader = leader;
  b.header.parent_digest = parent.digest();
  b.header.tx_root = merkle_root(txs);
  b.transactions = std::move(txs);
  return b;
}

bool sign_block(Block& block, const KeyRing& keys) {
  if (!block.header.leader) return false;
  auto tag = keys.sign(*block.header.leader, block.digest());
  if (!tag) return false;
  block.header.signature = *tag;
  return true;
}

ScheduleBook::ScheduleBook(std::uint64_t slots_per_epoch) : slots_per_epoch_(slots_per_epoch) {
  if (slots_per_epoch == 0) fail(Errc::DomainError, "slots_per_epoch must be >= 1");
}

void ScheduleBook::set_epoch(std::uint64_t epoch, std::vector<AccountId> leaders, Tokens reward) {
  if (leaders.size() != slots_per_epoch_)
    fail(Errc::DomainError, "leader list length must equal slots_per_epoch");
  epochs_[epoch] = Entry{std::move(leaders), reward};
}

std::uint64_t ScheduleBook::epoch_of(std::uint64_t height) const noexcept {
  return height == 0 ? 0 : (height - 1) / slots_per_epoch_;
}

std::uint64_t ScheduleBook::slot_of(std::uint64_t height) const noexcept {
  return height == 0 ? 0 : (height - 1) % slots_per_epoch_;
}

std::uint64_t ScheduleBook::height_of(std::uint64_t epoch, std::uint64_t slot) const noexcept {
  return epoch * slots_per_epoch_ + slot + 1;
}

const AccountId* ScheduleBook::leader_at(std::uint64_t height) const {
  if (height == 0) return nullptr;
  auto it = epochs_.find(epoch_of(height));
  if (it == epochs_.end()) return nullptr;
  return &it->second.leaders[slot_of(height)];
}

Tokens ScheduleBook::reward_at(std::uint64_t height) const {
  auto it = epochs_.find(epoch_of(height));
  return it == epochs_.end() ? 0 : it->second.reward;
}

Tokens StakeLedger::balance(const AccountId& a) const {
  auto it = balances_.find(a);
  return it == balances_.end() ? 0 : it->second;
}

Tokens StakeLedger::locked(const AccountId& a) const {
  auto it = locked_.find(a);
  return it == locked_.end() ? 0 : it->second;
}

Tokens StakeLedger::escrowed(const AccountId& contract) const {
  auto it = escrow_.find(contract);
  return it == escrow_.end() ? 0 : it->second;
}

Tokens StakeLedger::total_escrowed() const noexcept {
  Tokens sum = 0;
  for (const auto& [_, v] : escrow_) sum += v;
  return sum;
}

void StakeLedger::credit(const AccountId& a, Tokens amount) {
  check_amount(amount);
  balances_[a] += amount;
  total_ += amount;
}

void StakeLedger::debit(const AccountId& a, Tokens amount) {
  check_amount(amount);
  if (free(a) < amount)
    fail(Errc::InsufficientBalance, "account " + a + " has " + std::to_string(free(a)) +
                                        " free tokens, needs " + std::to_string(amount));
  balances_[a] -= amount;
  total_ -= amount;
}

void StakeLedger::transfer(const AccountId& from, const AccountId& to, Tokens amount) {
  debit(from, amount);
  credit(to, amount);
}

void StakeLedger::move_to_escrow(const AccountId& from, const AccountId& contract, Tokens amount) {
  debit(from, amount);
  escrow_[contract] += amount;
}

Tokens StakeLedger::lock(const AccountId& a, Tokens amount) {
  check_amount(amount);
  const Tokens granted = std::min(amount, free(a));
  if (granted > 0) locked_[a] += granted;
  return granted;
}

void StakeLedger::lock_all(const AccountId& a) {
  const Tokens b = balance(a);
  if (b > 0) locked_[a] = b;
}

void StakeLedger::reset_balances(const std::map<AccountId, Tokens>& balances) {
  balances_.clear();
  locked_.clear();
  total_ = 0;
  for (const auto& [a, v] : balances) credit(a, v);
}

bool StakeLedger::invariants_hold() const {
  Tokens sum = 0;
  for (const auto& [a, v] : balances_) {
    if (v < 0) return false;
    sum += v;
  }
  for (const auto& [a, v] : locked_) {
    if (v < 0 || v > balance(a)) return false;
  }
  for (const auto& [_, v] : escrow_) {
    if (v < 0) return false;
  }
  return sum == total_;
}

namespace {

void apply_stake_effect(StakeLedger& stake, const Transaction& tx) {
  switch (tx.kind) {
    case TxKind::payment:
      stake.transfer(tx.sender, tx.receiver, tx.amount);
      break;
    case TxKind::cross_lock:
      stake.move_to_escrow(tx.sender, tx.receiver, tx.amount);
      break;
    case TxKind::cross_mint:
      stake.credit(tx.receiver, tx.amount);
      break;
    case TxKind::deposit_lock:
      if (stake.free(tx.sender) < tx.amount)
        fail(Errc::InsufficientBalance, "deposit exceeds free balance of " + tx.sender);
      stake.lock(tx.sender, tx.amount);
      break;
  }
}

// Rejects malformed transactions, ids already on the prefix or repeated in
// the batch, and reused mint proofs.
void check_identities(const LedgerState& state, std::span<const Transaction> txs) {
  std::unordered_set<std::string_view> ids;
  std::set<Digest> refs;
  for (const auto& tx : txs) {
    if (!tx.well_formed()) fail(Errc::InvalidBlock, "malformed transaction " + tx.id);
    if (state.tx_ids.contains(tx.id) || !ids.insert(tx.id).second)
      fail(Errc::InvalidBlock, "duplicate transaction " + tx.id);
    if (tx.spv_proof && (state.mint_refs.contains(*tx.spv_proof) || !refs.insert(*tx.spv_proof).second))
      fail(Errc::InvalidBlock, "proof already minted: " + tx.spv_proof->hex());
  }
}

}  // namespace

void apply_transaction(LedgerState& state, const Transaction& tx) {
  check_identities(state, std::span(&tx, 1));
  apply_stake_effect(state.stake, tx);
  state.tx_ids.insert(tx.id);
  if (tx.spv_proof) state.mint_refs.insert(*tx.spv_proof);
}

void apply_block(LedgerState& state, const Block& block, Tokens reward) {
  if (block.is_empty()) return;
  check_identities(state, block.transactions);
  StakeLedger stake = state.stake;
  for (const auto& tx : block.transactions) apply_stake_effect(stake, tx);
  stake.credit(*block.header.leader, reward);
  state.stake = std::move(stake);
  for (const auto& tx : block.transactions) {
    state.tx_ids.insert(tx.id);
    if (tx.spv_proof) state.mint_refs.insert(*tx.spv_proof);
  }
}

bool conflict_free(const LedgerState& state, std::span<const Transaction> txs) {
  try {
    check_identities(state, txs);
    StakeLedger stake = state.stake;
    for (const auto& tx : txs) apply_stake_effect(stake, tx);
  } catch (const Error&) {
    return false;
  }
  return true;
}

bool Fork::linked() const {
  if (blocks.empty() || blocks.front().height() != 0) return false;
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    if (blocks[i].height() != i) return false;
    if (blocks[i].header.parent_digest != blocks[i - 1].digest()) return false;
  }
  return true;
}

bool validate_header(const BlockHeader& h, const Block& parent, const ScheduleBook& schedule,
                     const KeyRing& keys) {
  if (!h.leader || !h.signature) return false;
  if (h.height != parent.height() + 1) return false;
  if (h.parent_digest != parent.digest()) return false;
  if (h.epoch != schedule.epoch_of(h.height)) return false;
  const AccountId* scheduled = schedule.leader_at(h.height);
  if (scheduled == nullptr || *scheduled != *h.leader) return false;
  return keys.verify(*h.leader, h.digest(), *h.signature);
}

namespace {

bool well_formed_empty(const Block& b) {
  return b.transactions.empty() && !b.header.signature && b.header.tx_root.is_zero();
}

}  // namespace

bool validate_block(const Block& b, const ScheduleBook& schedule, const Block& parent,
                    const KeyRing& keys) {
  if (b.is_empty()) return well_formed_empty(b);
  if (!validate_header(b.header, parent, schedule, keys)) return false;
  if (merkle_root(b.transactions) != b.header.tx_root) return false;
  std::unordered_set<std::string> ids;
  for (const auto& tx : b.transactions) {
    if (!tx.well_formed() || !ids.insert(tx.id).second) return false;
  }
  return true;
}

bool validate_block(const Block& b, const ScheduleBook& schedule, const Block& parent,
                    const KeyRing& keys, const LedgerState& prefix) {
  return validate_block(b, schedule, parent, keys) && conflict_free(prefix, b.transactions);
}

std::set<std::uint64_t> signed_heights(std::span<const Fork> forks, const ScheduleBook& schedule,
                                       const KeyRing& keys) {
  std::set<std::uint64_t> out;
  for (const auto& f : forks) {
    for (std::size_t i = 1; i < f.blocks.size(); ++i) {
      const auto& b = f.blocks[i];
      if (!b.is_empty() && !out.contains(b.height()) &&
          validate_header(b.header, f.blocks[i - 1], schedule, keys)) {
        out.insert(b.height());
      }
    }
  }
  return out;
}

bool valid_fork(const Fork& f, const ForkContext& ctx,
                const std::set<std::uint64_t>& observed_signed) {
  if (ctx.schedule == nullptr || ctx.keys == nullptr) fail(Errc::DomainError, "incomplete ForkContext");
  if (f.blocks.size() <= ctx.anchor_height) return false;
  if (!f.linked()) return false;
  if (f.blocks[ctx.anchor_height].digest() != ctx.anchor_digest) return false;

  LedgerState state = ctx.anchor_state;
  for (std::size_t i = ctx.anchor_height + 1; i < f.blocks.size(); ++i) {
    const Block& b = f.blocks[i];
    if (b.header.epoch != ctx.schedule->epoch_of(b.height())) return false;
    if (b.is_empty() && observed_signed.contains(b.height())) return false;
    if (!validate_block(b, *ctx.schedule, f.blocks[i - 1], *ctx.keys)) return false;
    try {
      apply_block(state, b, ctx.schedule->reward_at(b.height()));
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

std::size_t fork_choice_index(std::span<const Fork> candidates, const ForkContext& ctx) {
  if (candidates.empty()) fail(Errc::NoValidFork, "fork_choice: no candidates");
  const auto observed = signed_heights(candidates, *ctx.schedule, *ctx.keys);
  std::optional<std::size_t> best;
  Digest best_tip;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Fork& f = candidates[i];
    if (!valid_fork(f, ctx, observed)) continue;
    const Digest tip = f.tip_digest();
    if (!best || f.length() > candidates[*best].length() ||
        (f.length() == candidates[*best].length() && tip < best_tip)) {
      best = i;
      best_tip = tip;
    }
  }
  if (!best) fail(Errc::NoValidFork, "fork_choice: every candidate contains an invalid block");
  return *best;
}

Fork fork_choice(std::span<const Fork> candidates, const ForkContext& ctx) {
  return candidates[fork_choice_index(candidates, ctx)];
}

void append_block(Fork& fork, LedgerState& state, Block block, const ScheduleBook& schedule,
                  const KeyRing& keys) {
  if (fork.blocks.empty()) fail(Errc::InvalidBlock, "append_block: fork has no genesis");
  const Block& parent = fork.tip();
  if (block.height() != parent.height() + 1 || block.header.parent_digest != parent.digest() ||
      block.header.epoch != schedule.epoch_of(block.height()))
    fail(Errc::InvalidBlock, "append_block: block does not extend the tip");
  if (!validate_block(block, schedule, parent, keys))
    fail(Errc::InvalidBlock, "append_block: block fails validation at height " +
                                 std::to_string(block.height()));
  try {
    apply_block(state, block, schedule.reward_at(block.height()));
  } catch (const Error& e) {
    fail(Errc::InvalidBlock, std::string("append_block: conflicting transaction: ") + e.what());
  }
  fork.blocks.push_back(std::move(block));
}

std::size_t common_prefix_depth(const Fork& f1, const Fork& f2) {
  const std::size_t shorter = std::min(f1.length(), f2.length());
  std::size_t common = 0;
  while (common < shorter && f1.blocks[common] == f2.blocks[common]) ++common;
  return shorter - common;
}

}  // namespace fedchain::ledger
