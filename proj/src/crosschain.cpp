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

#include "fedchain/crosschain.hpp"

#include <limits>
#include <utility>

#include "fedchain/analytics.hpp"

namespace fedchain::crosschain {

namespace {

bool header_chain_valid(const SpvProof& proof, const OriginView& origin) {
  const auto& hs = proof.header_chain;
  if (hs.empty() || hs.front().height != 0 || hs.front().digest() != origin.genesis_digest) return false;
  for (std::size_t i = 1; i < hs.size(); ++i) {
    const auto& h = hs[i];
    if (h.height != i || h.parent_digest != hs[i - 1].digest()) return false;
    if (h.epoch != origin.schedule->epoch_of(h.height)) return false;
    if (!h.leader) {
      if (h.signature || !h.tx_root.is_zero()) return false;
      continue;
    }
    const AccountId* scheduled = origin.schedule->leader_at(h.height);
    if (scheduled == nullptr || *scheduled != *h.leader) return false;
    if (!h.signature || !origin.keys->verify(*h.leader, h.digest(), *h.signature)) return false;
  }
  return true;
}

}  // namespace

Tokens Rate::convert(Tokens amount) const {
  if (num <= 0 || den <= 0) fail(Errc::DomainError, "exchange rate must be positive");
  if (amount < 0) fail(Errc::DomainError, "negative amount");
  __extension__ using i128 = __int128;
  const auto wide = static_cast<i128>(amount) * num / den;
  if (wide > std::numeric_limits<Tokens>::max()) fail(Errc::DomainError, "converted amount overflows");
  return static_cast<Tokens>(wide);
}

Tokens EscrowContract::locked_pool(const consensus::ChainState& home) const {
  return home.ledger.stake.escrowed(contract_id);
}

ledger::Transaction lock_tokens(const consensus::ChainState& chain, const AccountId& user, Tokens amount,
                                EscrowContract& contract) {
  if (contract.home_chain != chain.chain_id)
    fail(Errc::DomainError, "contract " + contract.contract_id + " does not live on " + chain.chain_id);
  if (contract.rate.num <= 0 || contract.rate.den <= 0) fail(Errc::DomainError, "exchange rate must be positive");
  if (amount <= 0) fail(Errc::InsufficientAmount, "lock amount must be positive");
  if (chain.ledger.stake.free(user) < amount)
    fail(Errc::InsufficientBalance, "free balance of " + user + " is below " + std::to_string(amount));
  std::string id = "lock/" + contract.contract_id + "/" + std::to_string(contract.locks_issued++) + "/" + user;
  return ledger::Transaction{std::move(id), ledger::TxKind::cross_lock, user, contract.contract_id, amount, {}};
}

void SpvProof::encode(ByteWriter& out) const {
  out.str(origin_chain);
  out.str(tx_id);
  transaction.encode(out);
  out.digest(block_digest);
  out.u64(leaf_index);
  out.u64(merkle_path.size());
  for (const auto& d : merkle_path) out.digest(d);
  out.u64(header_chain.size());
  for (const auto& h : header_chain) h.encode(out);
  out.u64(depth);
}

Digest SpvProof::digest() const {
  ByteWriter w;
  encode(w);
  return w.hash();
}

Digest SpvProof::transfer_digest() const {
  ByteWriter w;
  w.str("transfer");
  w.str(origin_chain);
  w.str(tx_id);
  w.digest(transaction.leaf());
  return w.hash();
}

SpvProof build_spv_proof(const consensus::ChainState& origin, const std::string& tx_id) {
  const auto& blocks = origin.fork.blocks;
  for (std::size_t h = blocks.size(); h-- > 0;) {
    const auto& txs = blocks[h].transactions;
    for (std::size_t i = 0; i < txs.size(); ++i) {
      if (txs[i].id != tx_id) continue;
      SpvProof p;
      p.origin_chain = origin.chain_id;
      p.tx_id = tx_id;
      p.transaction = txs[i];
      p.block_digest = blocks[h].digest();
      p.leaf_index = i;
      p.merkle_path = ledger::merkle_path(txs, i);
      p.header_chain.reserve(blocks.size());
      for (const auto& b : blocks) p.header_chain.push_back(b.header);
      p.depth = blocks.size() - 1 - h;
      return p;
    }
  }
  fail(Errc::TxNotFound, "transaction " + tx_id + " is not on the canonical fork of " + origin.chain_id);
}

OriginView origin_view(const consensus::ChainState& origin) {
  return OriginView{origin.fork.blocks.front().digest(), &origin.book, &origin.keys};
}

MintResult verify_and_mint(const consensus::ChainState& dest, EscrowContract& contract, const SpvProof& proof,
                           double adversarial_ratio, const OriginRegistry& origins) {
  if (contract.home_chain != dest.chain_id)
    fail(Errc::DomainError, "contract " + contract.contract_id + " does not live on " + dest.chain_id);
  auto it = origins.find(proof.origin_chain);
  if (proof.origin_chain != contract.peer_chain || it == origins.end())
    fail(Errc::UnknownOrigin, "no peg with chain " + proof.origin_chain);
  const OriginView& origin = it->second;
  if (origin.schedule == nullptr || origin.keys == nullptr) fail(Errc::DomainError, "incomplete origin view");

  if (!header_chain_valid(proof, origin)) fail(Errc::InvalidProof, "header chain does not verify");
  std::size_t h = 0;
  while (h < proof.header_chain.size() && proof.header_chain[h].digest() != proof.block_digest) ++h;
  if (h == proof.header_chain.size()) fail(Errc::InvalidProof, "containing block is not in the header chain");
  const auto& header = proof.header_chain[h];
  if (!header.leader) fail(Errc::InvalidProof, "containing block is EMPTY");
  if (proof.depth != proof.header_chain.size() - 1 - h) fail(Errc::InvalidProof, "claimed depth does not match");
  const auto& tx = proof.transaction;
  if (tx.id != proof.tx_id || tx.kind != ledger::TxKind::cross_lock || !tx.well_formed())
    fail(Errc::InvalidProof, "proven transaction is not a lock");
  if (tx.receiver != contract.peer_contract_id) fail(Errc::InvalidProof, "lock was not made to the peer contract");
  if (proof.merkle_path.size() < 64 && (proof.leaf_index >> proof.merkle_path.size()) != 0)
    fail(Errc::InvalidProof, "leaf index is outside the tree the path describes");
  if (ledger::merkle_root_from_path(tx.leaf(), proof.leaf_index, proof.merkle_path) != header.tx_root)
    fail(Errc::InvalidProof, "merkle path does not reach the transaction root");

  const Digest transfer = proof.transfer_digest();
  if (contract.seen_proofs.contains(transfer)) fail(Errc::ConflictingProof, "transfer " + tx.id + " was already minted");

  MintResult out;
  out.depth = proof.depth;
  out.required_depth = analytics::confirm_depth(adversarial_ratio);
  if (static_cast<std::int64_t>(proof.depth) < out.required_depth) return out;

  contract.seen_proofs.insert(transfer);
  out.mint = ledger::Transaction{"mint/" + transfer.hex(), ledger::TxKind::cross_mint, contract.contract_id,
                                 tx.sender, contract.rate.convert(tx.amount), transfer};
  return out;
}

}  // namespace fedchain::crosschain
