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

#include "fedchain/common.hpp"

namespace fedchain {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DomainError: return "DomainError";
    case Errc::NoValidFork: return "NoValidFork";
    case Errc::InvalidBlock: return "InvalidBlock";
    case Errc::InsufficientBalance: return "InsufficientBalance";
    case Errc::InsufficientAmount: return "InsufficientAmount";
    case Errc::EmptyLedger: return "EmptyLedger";
    case Errc::NotCommitteeMember: return "NotCommitteeMember";
    case Errc::RevealMismatch: return "RevealMismatch";
    case Errc::PhaseViolation: return "PhaseViolation";
    case Errc::BeaconUnavailable: return "BeaconUnavailable";
    case Errc::EpochInProgress: return "EpochInProgress";
    case Errc::TxNotFound: return "TxNotFound";
    case Errc::InvalidProof: return "InvalidProof";
    case Errc::ConflictingProof: return "ConflictingProof";
    case Errc::UnknownOrigin: return "UnknownOrigin";
    case Errc::InfeasibleProfile: return "InfeasibleProfile";
    case Errc::DegenerateOpponents: return "DegenerateOpponents";
    case Errc::NonpositiveReward: return "NonpositiveReward";
    case Errc::BoundaryProfile: return "BoundaryProfile";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace fedchain
