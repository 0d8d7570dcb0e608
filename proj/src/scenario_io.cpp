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

#include "fedchain/scenario_io.hpp"

#include <set>

#include "fedchain/common.hpp"
#include "json.hpp"

namespace fedchain::io {

namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::ConfigError, std::string("malformed JSON: ") + e.what());
  }
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) fail(Errc::ConfigError, where + " must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) fail(Errc::ConfigError, "unknown field '" + key + "' in " + where);
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(Errc::ConfigError, std::string("field '") + key + "' has the wrong type");
  }
}

// Integers must be non-negative whole numbers; nlohmann would silently
// truncate 2.5 or wrap -1.
void read_count(const json& j, const char* key, std::size_t& out) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    fail(Errc::ConfigError, std::string("field '") + key + "' must be a non-negative integer");
  out = v.get<std::size_t>();
}

void read_int(const json& j, const char* key, std::int64_t& out) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number_integer()) fail(Errc::ConfigError, std::string("field '") + key + "' must be an integer");
  out = j.at(key).get<std::int64_t>();
}

Seed read_seed(const json& v) {
  try {
    if (v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0))
      return seed_from_u64(v.get<std::uint64_t>());
    if (v.is_string()) return parse_seed(v.get<std::string>());
  } catch (const Error& e) {
    fail(Errc::ConfigError, std::string("bad seed: ") + e.what());
  }
  fail(Errc::ConfigError, "seed must be a non-negative integer or a string");
}

sim::ScenarioConfig scenario_from(const json& j) {
  static const std::set<std::string> known{
      "name",        "N",         "M",         "budget_low",      "budget_high",    "reward_scheme",
      "rewards",     "adversary", "delta_s",   "n_delta",         "n_e",            "slots_per_epoch",
      "committee_size", "deposit", "slot_seconds", "online_probability", "kappa",   "cq_window",
      "cq_mu",       "cq_delta",  "run_chains", "seed"};
  reject_unknown(j, known, "scenario");

  sim::ScenarioConfig c;
  read(j, "name", c.name);
  read_count(j, "N", c.N);
  read_count(j, "M", c.M);
  read(j, "budget_low", c.budget_low);
  read(j, "budget_high", c.budget_high);
  if (j.contains("reward_scheme")) {
    std::string s;
    read(j, "reward_scheme", s);
    if (s == "static")
      c.reward_scheme = sim::RewardScheme::fixed;
    else if (s == "dynamic")
      c.reward_scheme = sim::RewardScheme::dynamic;
    else
      fail(Errc::ConfigError, "reward_scheme must be \"static\" or \"dynamic\"");
  }
  read(j, "rewards", c.fixed_rewards);
  if (j.contains("adversary")) {
    const auto& a = j.at("adversary");
    reject_unknown(a, {"kind", "budget", "corrupt", "pick"}, "adversary");
    std::string kind = "none";
    read(a, "kind", kind);
    if (kind == "none")
      c.adversary = sim::AdversaryKind::none;
    else if (kind == "static")
      c.adversary = sim::AdversaryKind::fixed_budget;
    else if (kind == "adaptive")
      c.adversary = sim::AdversaryKind::adaptive;
    else
      fail(Errc::ConfigError, "adversary.kind must be none, static or adaptive");
    read(a, "budget", c.adversary_budget);
    read_count(a, "corrupt", c.corrupted);
    std::string pick = "largest";
    read(a, "pick", pick);
    if (pick == "largest")
      c.pick = sim::CorruptionPick::largest;
    else if (pick == "random")
      c.pick = sim::CorruptionPick::random;
    else
      fail(Errc::ConfigError, "adversary.pick must be largest or random");
  }
  read(j, "delta_s", c.delta_s);
  if (j.contains("n_delta")) {
    std::size_t n = 0;
    read_count(j, "n_delta", n);
    c.n_delta = n;
  }
  read_count(j, "n_e", c.epochs);
  read_count(j, "slots_per_epoch", c.slots_per_epoch);
  read_count(j, "committee_size", c.committee_size);
  read_int(j, "deposit", c.deposit);
  read(j, "slot_seconds", c.slot_seconds);
  read(j, "online_probability", c.online_probability);
  read_int(j, "kappa", c.kappa);
  read_int(j, "cq_window", c.cq_window);
  read(j, "cq_mu", c.cq_mu);
  read(j, "cq_delta", c.cq_delta);
  read(j, "run_chains", c.run_chains);
  if (j.contains("seed")) c.rng_seed = read_seed(j.at("seed"));
  c.validate();
  return c;
}

const char* kind_name(sim::AdversaryKind k) {
  switch (k) {
    case sim::AdversaryKind::none: return "none";
    case sim::AdversaryKind::fixed_budget: return "static";
    case sim::AdversaryKind::adaptive: return "adaptive";
  }
  return "none";
}

}  // namespace

sim::ScenarioConfig parse_scenario(std::string_view json_text) { return scenario_from(parse_json(json_text)); }

std::vector<sim::ScenarioConfig> parse_scenarios(std::string_view json_text) {
  const json j = parse_json(json_text);
  if (!j.is_object() || !j.contains("scenarios")) return {scenario_from(j)};
  reject_unknown(j, {"scenarios"}, "batch");
  const auto& list = j.at("scenarios");
  if (!list.is_array() || list.empty()) fail(Errc::ConfigError, "scenarios must be a non-empty array");
  std::vector<sim::ScenarioConfig> out;
  std::set<std::string> names;
  for (const auto& item : list) {
    out.push_back(scenario_from(item));
    if (!names.insert(out.back().name).second)
      fail(Errc::ConfigError, "duplicate scenario name '" + out.back().name + "'");
  }
  return out;
}

std::string scenario_json(const sim::ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  j["N"] = c.N;
  j["M"] = c.M;
  j["budget_low"] = c.budget_low;
  j["budget_high"] = c.budget_high;
  j["reward_scheme"] = c.reward_scheme == sim::RewardScheme::dynamic ? "dynamic" : "static";
  j["rewards"] = c.fixed_rewards;
  j["adversary"] = {{"kind", kind_name(c.adversary)},
                    {"budget", c.adversary_budget},
                    {"corrupt", c.corrupted},
                    {"pick", c.pick == sim::CorruptionPick::largest ? "largest" : "random"}};
  j["delta_s"] = c.delta_s;
  j["n_delta"] = c.perturbed();
  j["n_e"] = c.epochs;
  j["slots_per_epoch"] = c.slots_per_epoch;
  j["committee_size"] = c.committee_size;
  j["deposit"] = c.deposit;
  j["slot_seconds"] = c.slot_seconds;
  j["online_probability"] = c.online_probability;
  j["kappa"] = c.kappa;
  j["cq_window"] = c.cq_window;
  j["cq_mu"] = c.cq_mu;
  j["cq_delta"] = c.cq_delta;
  j["run_chains"] = c.run_chains;
  j["seed"] = c.rng_seed.hex();
  return j.dump(2) + "\n";
}

EquilibriumConfig parse_equilibrium(std::string_view json_text) {
  const json j = parse_json(json_text);
  reject_unknown(j, {"budgets", "rewards", "M", "reward_scheme"}, "equilibrium config");
  EquilibriumConfig c;
  if (!j.contains("budgets")) fail(Errc::ConfigError, "equilibrium config needs budgets");
  read(j, "budgets", c.game.budgets);
  std::string scheme = j.contains("rewards") ? "static" : "dynamic";
  read(j, "reward_scheme", scheme);
  if (scheme == "dynamic") {
    c.dynamic = true;
    std::size_t M = 0;
    read_count(j, "M", M);
    if (M == 0 && j.contains("rewards")) M = j.at("rewards").size();
    if (M < 2) fail(Errc::ConfigError, "dynamic equilibrium needs M >= 2");
    for (double b : c.game.budgets)
      if (!(b > 0.0)) fail(Errc::ConfigError, "budgets must be positive");
    c.game.rewards.assign(M, 0.0);
  } else if (scheme == "static") {
    if (!j.contains("rewards")) fail(Errc::ConfigError, "static equilibrium needs rewards");
    read(j, "rewards", c.game.rewards);
    if (j.contains("M") && j.at("M") != json(c.game.rewards.size()))
      fail(Errc::ConfigError, "M does not match the number of rewards");
  } else {
    fail(Errc::ConfigError, "reward_scheme must be \"static\" or \"dynamic\"");
  }
  if (c.game.budgets.empty()) fail(Errc::ConfigError, "budgets must not be empty");
  if (!c.dynamic) {
    try {
      c.game.validate();
    } catch (const Error& e) {
      fail(Errc::ConfigError, e.what());
    }
  }
  return c;
}

}  // namespace fedchain::io
