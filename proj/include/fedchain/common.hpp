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
#include <stdexcept>
#include <string>
#include <string_view>

namespace fedchain {

using AccountId = std::string;
using ChainId = std::string;

/// Token amounts on a ledger, in the chain's smallest unit.
using Tokens = std::int64_t;

enum class Errc {
  DomainError,
  NoValidFork,
  InvalidBlock,
  InsufficientBalance,
  InsufficientAmount,
  EmptyLedger,
  NotCommitteeMember,
  RevealMismatch,
  PhaseViolation,
  BeaconUnavailable,
  EpochInProgress,
  TxNotFound,
  InvalidProof,
  ConflictingProof,
  UnknownOrigin,
  InfeasibleProfile,
  DegenerateOpponents,
  NonpositiveReward,
  BoundaryProfile,
  ConfigError,
  IoError,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace fedchain
