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
#include <string>
#include <vector>

#include "fedchain/common.hpp"
#include "fedchain/consensus.hpp"
#include "fedchain/digest.hpp"
#include "fedchain/ledger.hpp"

namespace fedchain::crosschain {

/// Positive rational exchange rate: tokens minted by this contract per token
/// locked on the peer chain.
struct Rate {
  std::int64_t num = 1;
  std::int64_t den = 1;

  /// floor(amount * num / den); the remainder stays in the peer pool.
  Tokens convert(Tokens amount) const;
};

/// One side of the peg. The contract on the origin chain holds locked tokens
/// in the ledger's escrow pool under `contract_id`; the contract on the
/// destination chain mints against SPV proofs of those locks.
struct EscrowContract {
  std::string contract_id;
  ChainId home_chain;
  ChainId peer_chain;
  std::string peer_contract_id;
  Rate rate;
  std::set<Digest> seen_proofs;
  std::uint64_t locks_issued = 0;

  Tokens locked_pool(const consensus::ChainState& home) const;
};

/// Builds the cross_lock transaction moving `amount` from `user` to the
/// contract's pool once included. Throws InsufficientAmount for amount <= 0,
/// InsufficientBalance when the free balance is short, DomainError when the
/// contract does not live on `chain`.
ledger::Transaction lock_tokens(const consensus::ChainState& chain, const AccountId& user, Tokens amount,
                                EscrowContract& contract);

struct SpvProof {
  ChainId origin_chain;
  std::string tx_id;
  ledger::Transaction transaction;
  Digest block_digest;
  std::uint64_t leaf_index = 0;
  std::vector<Digest> merkle_path;
  /// Headers from the origin genesis (the checkpoint) to the current tip, so
  /// the claimed depth is authenticated by the chain itself.
  std::vector<ledger::BlockHeader> header_chain;
  std::uint64_t depth = 0;

  void encode(ByteWriter& out) const;
  Digest digest() const;
  /// Identifies the transfer itself, independent of how deep the proof is.
  /// This is what contracts remember to refuse a second mint.
  Digest transfer_digest() const;
};

/// Throws TxNotFound when `tx_id` is not on the canonical fork.
SpvProof build_spv_proof(const consensus::ChainState& origin, const std::string& tx_id);

/// What a destination contract needs to know about an origin chain.
struct OriginView {
  Digest genesis_digest;
  const ledger::ScheduleBook* schedule = nullptr;
  const ledger::KeyRing* keys = nullptr;
};

OriginView origin_view(const consensus::ChainState& origin);
using OriginRegistry = std::map<ChainId, OriginView>;

struct MintResult {
  std::optional<ledger::Transaction> mint;  // empty while pending
  std::uint64_t depth = 0;
  std::int64_t required_depth = 0;

  bool pending() const noexcept { return !mint.has_value(); }
};

/// Checks the proof, refuses repeats, and mints amount x rate to the locking
/// user once the proof is confirm_depth(adversarial_ratio) deep. The mint is
/// a cross_mint transaction for the destination chain; its proof digest is
/// recorded in the contract. Throws UnknownOrigin, InvalidProof or
/// ConflictingProof.
MintResult verify_and_mint(const consensus::ChainState& dest, EscrowContract& contract, const SpvProof& proof,
                           double adversarial_ratio, const OriginRegistry& origins);

}  // namespace fedchain::crosschain
