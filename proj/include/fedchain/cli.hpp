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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fedchain/common.hpp"

namespace fedchain::cli {

/// Adversarial ratios 0.10 to 0.45 in steps of 0.05.
const std::vector<double>& default_ratios();

/// "ratio,kappa,minutes" rows, minutes truncated to one decimal. Ratios must
/// lie in (0, 0.5); 0.5 and above break the honest-majority assumption of the
/// beacon and are rejected with DomainError.
std::string confirm_table(const std::vector<double>& ratios, double slot_seconds = 20.0);

/// Follower allocations, utilities, leader reward (dynamic only) and the
/// uniqueness check for an equilibrium config.
std::string equilibrium_report(const std::string& config_text);

struct RunManifest {
  std::string scenario;
  std::string config_path;
  std::string output_dir;
  std::string config_digest;  // sha256 of "blob <size>\0" + content, as git does
  std::string started_at;     // UTC, ISO 8601
  std::string finished_at;
};

/// Runs every scenario in the config (one or a batch) on up to `workers`
/// threads. A single scenario writes config.json, metrics.csv, summary.txt and
/// manifest.json into `out_dir`; a batch writes them into out_dir/<name>/.
/// `seed_override` replaces every scenario's seed.
std::vector<RunManifest> simulate(const std::string& config_path, const std::string& out_dir, std::size_t workers = 1,
                                  const std::optional<std::string>& seed_override = std::nullopt);

/// 2 for configuration and domain errors, 3 for everything else.
int exit_code_for(Errc code) noexcept;

/// Content digest of a byte string, git blob style over sha256.
std::string content_digest(const std::string& bytes);

}  // namespace fedchain::cli
