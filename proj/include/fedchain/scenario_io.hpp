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

#include <string>
#include <string_view>
#include <vector>

#include "fedchain/game.hpp"
#include "fedchain/sim.hpp"

namespace fedchain::io {

/// Scenario from a JSON object. Absent fields take ScenarioConfig defaults;
/// unknown fields and bad values throw ConfigError.
sim::ScenarioConfig parse_scenario(std::string_view json_text);

/// Either a single scenario object or {"scenarios": [...]}.
std::vector<sim::ScenarioConfig> parse_scenarios(std::string_view json_text);

/// Fully populated JSON for a scenario, defaults written out.
std::string scenario_json(const sim::ScenarioConfig& cfg);

/// {"budgets": [...], "rewards": [...]} or {"budgets": [...], "M": m,
/// "reward_scheme": "dynamic"}; the dynamic form sets every reward to the
/// leader optimum.
struct EquilibriumConfig {
  game::GameInstance game;
  bool dynamic = false;
};
EquilibriumConfig parse_equilibrium(std::string_view json_text);

}  // namespace fedchain::io
