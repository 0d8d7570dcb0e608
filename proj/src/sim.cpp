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

#include "fedchain/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "fedchain/analytics.hpp"
#include "fedchain/common.hpp"

namespace fedchain::sim {

namespace {

const AccountId kAdversary = "adversary";

void config_check(bool ok, const std::string& what) {
  if (!ok) fail(Errc::ConfigError, what);
}

std::string stakeholder_id(std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "s%04zu", n + 1);
  return buf;
}

Tokens to_tokens(double x) { return x <= 0.0 ? 0 : static_cast<Tokens>(std::floor(x + 0.5)); }

Seed derive_seed(const Seed& root, std::string_view label, std::uint64_t index) {
  ByteWriter w;
  w.digest(root);
  w.str(label);
  w.u64(index);
  return w.hash();
}

// Payments between honest accounts, so an honest block is never empty for
// lack of traffic.
class Traffic {
 public:
  Traffic(std::string prefix, std::vector<AccountId> honest) : prefix_(std::move(prefix)), honest_(std::move(honest)) {}

  void top_up(const consensus::ChainState& state, std::vector<ledger::Transaction>& pending, std::mt19937_64& rng) {
    // A payer seated on the new committee has its stake locked; its wallet
    // drops the payment rather than leave leaders with nothing to include.
    std::erase_if(pending, [&](const ledger::Transaction& tx) {
      return tx.id.starts_with(prefix_) && state.ledger.stake.free(tx.sender) < tx.amount;
    });
    if (honest_.size() < 2 || !pending.empty()) return;
    for (int attempt = 0; attempt < 16; ++attempt) {
      const auto& from = honest_[uniform_index(rng, honest_.size())];
      const auto& to = honest_[uniform_index(rng, honest_.size())];
      if (from == to || state.ledger.stake.free(from) < 1) continue;
      pending.push_back(ledger::make_payment(prefix_ + std::to_string(next_++), from, to, 1));
      return;
    }
  }

 private:
  std::string prefix_;
  std::vector<AccountId> honest_;
  std::uint64_t next_ = 0;
};

struct EpochRun {
  double empty_fraction = 0.0;
  bool halted = false;
};

EpochRun run_chain_epoch(consensus::ChainState& state, const consensus::Behaviors& behaviors, Traffic& traffic,
                         std::vector<ledger::Transaction>& pending, std::mt19937_64& rng,
                         std::vector<bool>* per_slot = nullptr) {
  EpochRun out;
  const auto beacon = consensus::run_beacon(state, behaviors, rng);
  if (!beacon.seed) {
    consensus::halt_epoch(state);
    out.halted = true;
    out.empty_fraction = 1.0;
    if (per_slot) per_slot->insert(per_slot->end(), state.slots_per_epoch, true);
    return out;
  }
  consensus::begin_epoch(state, beacon.seed);
  std::uint64_t empty = 0;
  for (std::uint64_t i = 0; i < state.slots_per_epoch; ++i) {
    traffic.top_up(state, pending, rng);
    const auto slot = consensus::run_slot(state, behaviors, pending, rng);
    if (slot.empty()) ++empty;
    if (per_slot) per_slot->push_back(slot.empty());
  }
  out.empty_fraction = static_cast<double>(empty) / static_cast<double>(state.slots_per_epoch);
  return out;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void ScenarioConfig::validate() const {
  config_check(N >= 1, "N must be >= 1");
  config_check(M >= 2, "M must be >= 2");
  config_check(budget_low > 0.0 && budget_low <= budget_high, "budgets need 0 < LB <= UB");
  if (reward_scheme == RewardScheme::fixed) {
    config_check(fixed_rewards.size() == M, "fixed rewards need one entry per chain");
    for (double r : fixed_rewards) config_check(r > 0.0, "fixed rewards must be positive");
  }
  config_check(adversary != AdversaryKind::fixed_budget || adversary_budget >= 0.0, "adversary budget must be >= 0");
  config_check(corrupted <= N, "N_A must not exceed N");
  config_check(delta_s > 0.0 && delta_s < 1.0, "delta_s must lie in (0, 1)");
  config_check(perturbed() <= N, "n_delta must not exceed N");
  config_check(epochs >= 1, "n_e must be >= 1");
  config_check(slots_per_epoch >= 1, "slots_per_epoch must be >= 1");
  config_check(committee_size >= 1, "committee_size must be >= 1");
  config_check(deposit >= 0, "deposit must be >= 0");
  config_check(slot_seconds > 0.0, "slot_seconds must be positive");
  config_check(online_probability >= 0.0 && online_probability <= 1.0, "online_probability must lie in [0, 1]");
  config_check(kappa >= 0, "kappa must be >= 0");
  config_check(cq_window >= 1, "cq_window must be >= 1");
  config_check(cq_mu > 0.0 && cq_mu <= 1.0, "cq_mu must lie in (0, 1]");
  config_check(cq_delta > 0.0 && cq_delta <= 1.0, "cq_delta must lie in (0, 1]");
}

const std::vector<std::string>& metrics_columns() {
  static const std::vector<std::string> cols{
      "epoch",        "chain",       "total_stake",  "adversarial_ratio", "pr_cp",
      "pr_cq_bound",  "pr_cq_exact", "confirmation_time_seconds",        "throughput_reduction",
      "reward",       "total_system_stake",          "broken",            "measured_empty_fraction",
      "halted"};
  return cols;
}

std::string metrics_csv(const std::vector<EpochMetrics>& rows) {
  std::string out;
  const auto& cols = metrics_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.epoch) + ',' + std::to_string(r.chain) + ',' + format_double(r.total_stake) + ',' +
           format_double(r.adversarial_ratio) + ',' + format_double(r.pr_cp) + ',' + format_double(r.pr_cq_bound) +
           ',' + format_double(r.pr_cq_exact) + ',' + format_double(r.confirmation_time_seconds) + ',' +
           format_double(r.throughput_reduction) + ',' + format_double(r.reward) + ',' +
           format_double(r.total_system_stake) + ',' + (r.broken ? "1" : "0") + ',' +
           format_double(r.measured_empty_fraction) + ',' + (r.halted ? "1" : "0") + '\n';
  }
  return out;
}

double fixed_budget_ratio(double chain_stake, double adversary_budget) {
  if (chain_stake < 0.0 || adversary_budget < 0.0) fail(Errc::DomainError, "stakes must be non-negative");
  const double total = chain_stake + adversary_budget;
  return total > 0.0 ? adversary_budget / total : 0.0;
}

std::vector<std::size_t> pick_corrupted(const std::vector<double>& budgets, std::size_t count, CorruptionPick pick,
                                        std::mt19937_64& rng) {
  if (count > budgets.size()) fail(Errc::DomainError, "cannot corrupt more stakeholders than exist");
  std::vector<std::size_t> idx(budgets.size());
  std::iota(idx.begin(), idx.end(), 0);
  if (pick == CorruptionPick::largest) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return budgets[a] > budgets[b]; });
  } else {
    for (std::size_t i = 0; i < count; ++i) std::swap(idx[i], idx[i + uniform_index(rng, idx.size() - i)]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<double> adaptive_ratios(const game::StrategyProfile& s, const std::vector<std::size_t>& corrupted) {
  if (s.empty()) return {};
  const std::size_t M = s.front().size();
  std::vector<double> total(M, 0.0), bad(M, 0.0);
  for (const auto& row : s)
    for (std::size_t m = 0; m < M; ++m) total[m] += row[m];
  for (std::size_t n : corrupted)
    for (std::size_t m = 0; m < M; ++m) bad[m] += s.at(n)[m];
  std::vector<double> ratio(M, 0.0);
  for (std::size_t m = 0; m < M; ++m) ratio[m] = total[m] > 0.0 ? std::min(1.0, bad[m] / total[m]) : 0.0;
  return ratio;
}

std::vector<double> apply_adversary(const game::StrategyProfile& s, const AdversaryView& adversary) {
  const std::size_t M = s.empty() ? 0 : s.front().size();
  switch (adversary.kind) {
    case AdversaryKind::none:
      return std::vector<double>(M, 0.0);
    case AdversaryKind::fixed_budget: {
      std::vector<double> ratio(M);
      for (std::size_t m = 0; m < M; ++m) {
        double stake = 0.0;
        for (const auto& row : s) stake += row[m];
        ratio[m] = fixed_budget_ratio(stake, adversary.budget);
      }
      return ratio;
    }
    case AdversaryKind::adaptive:
      return adaptive_ratios(s, adversary.corrupted);
  }
  return {};
}

SecurityRow security_row(double ratio, const ScenarioConfig& cfg) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) fail(Errc::DomainError, "adversarial ratio must lie in [0, 1]");
  SecurityRow r;
  const auto threshold = static_cast<std::int64_t>(std::floor((1.0 - cfg.cq_mu) * static_cast<double>(cfg.cq_window)));
  if (ratio >= 1.0) {
    // Every slot is adversarial; the formulas' gamma > 0 domain ends here.
    r.pr_cp = 1.0;
    r.pr_cq_bound = 1.0 - std::exp(-static_cast<double>(cfg.cq_window) * cfg.cq_delta * cfg.cq_delta / 2.0);
    r.pr_cq_exact = threshold < cfg.cq_window ? 1.0 : 0.0;
    r.confirmation_time_seconds = std::numeric_limits<double>::infinity();
    r.throughput_reduction = 1.0;
    return r;
  }
  const double gamma = 1.0 - ratio;
  r.pr_cp = analytics::pr_cp(gamma, cfg.kappa);
  r.pr_cq_bound = analytics::pr_cq_bound(gamma, cfg.cq_window, cfg.cq_delta);
  r.pr_cq_exact = analytics::pr_cq_exact(gamma, cfg.cq_window, threshold);
  r.confirmation_time_seconds = static_cast<double>(analytics::confirm_depth(ratio)) * cfg.slot_seconds;
  r.throughput_reduction = ratio == 0.0 ? 0.0 : analytics::throughput_threshold(ratio, cfg.cq_window);
  return r;
}

std::vector<EpochMetrics> run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const std::size_t N = cfg.N;
  const std::size_t M = cfg.M;

  // One stream per purpose so that, for a fixed seed, budgets evolve the same
  // way whatever the reward scheme or adversary.
  auto budget_rng = make_rng(cfg.rng_seed, "budgets");
  auto perturb_rng = make_rng(cfg.rng_seed, "perturb");
  auto corrupt_rng = make_rng(cfg.rng_seed, "corrupt");

  game::GameInstance g;
  g.budgets.resize(N);
  for (auto& b : g.budgets) b = uniform(budget_rng, cfg.budget_low, cfg.budget_high);

  std::vector<AccountId> accounts;
  for (std::size_t n = 0; n < N; ++n) accounts.push_back(stakeholder_id(n));
  std::vector<AccountId> keyed = accounts;
  keyed.push_back(kAdversary);
  const auto keys = ledger::KeyRing::derive(derive_seed(cfg.rng_seed, "keys", 0), keyed);

  std::vector<std::optional<consensus::ChainState>> chains(M);
  std::vector<std::mt19937_64> chain_rngs;
  std::vector<std::vector<ledger::Transaction>> pending(M);
  std::vector<Traffic> traffic;
  for (std::size_t m = 0; m < M; ++m) {
    chain_rngs.push_back(make_rng(derive_seed(cfg.rng_seed, "chain", m), "slots"));
    traffic.emplace_back("pay/" + std::to_string(m) + "/", std::vector<AccountId>{});
  }

  game::StrategyProfile profile(N, std::vector<double>(M, 0.0));
  std::vector<EpochMetrics> rows;
  rows.reserve(cfg.epochs * M);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    // (1) rewards
    if (cfg.reward_scheme == RewardScheme::dynamic)
      g.rewards.assign(M, game::leader_optimum(g.budgets, M));
    else
      g.rewards = cfg.fixed_rewards;

    // (2) followers respond in order 1..N until no one moves
    auto dyn = game::best_response_dynamics(g, profile, 100000, 1e-10);
    if (!dyn.converged) fail(Errc::DomainError, "follower dynamics did not converge in epoch " + std::to_string(epoch));
    profile = std::move(dyn.profile);

    // (3) adversary
    AdversaryView adv{cfg.adversary, cfg.adversary_budget, {}};
    if (cfg.adversary == AdversaryKind::adaptive)
      adv.corrupted = pick_corrupted(g.budgets, cfg.corrupted, cfg.pick, corrupt_rng);
    const auto ratios = apply_adversary(profile, adv);

    // (4) metrics, and the epoch played out on each chain's ledger
    const double system_stake = std::accumulate(g.budgets.begin(), g.budgets.end(), 0.0);
    std::set<std::size_t> corrupted(adv.corrupted.begin(), adv.corrupted.end());
    for (std::size_t m = 0; m < M; ++m) {
      EpochMetrics row;
      row.epoch = epoch;
      row.chain = m;
      for (std::size_t n = 0; n < N; ++n) row.total_stake += profile[n][m];
      row.adversarial_ratio = ratios[m];
      const auto sec = security_row(ratios[m], cfg);
      row.pr_cp = sec.pr_cp;
      row.pr_cq_bound = sec.pr_cq_bound;
      row.pr_cq_exact = sec.pr_cq_exact;
      row.confirmation_time_seconds = sec.confirmation_time_seconds;
      row.throughput_reduction = sec.throughput_reduction;
      row.reward = g.rewards[m];
      row.total_system_stake = system_stake;
      row.broken = ratios[m] >= 0.5;

      if (cfg.run_chains) {
        std::map<AccountId, Tokens> balances;
        std::vector<AccountId> honest;
        consensus::Behaviors behaviors;
        for (std::size_t n = 0; n < N; ++n) {
          const Tokens t = to_tokens(profile[n][m]);
          if (t > 0) balances[accounts[n]] = t;
          const bool bad = corrupted.contains(n);
          if (!bad) honest.push_back(accounts[n]);
          behaviors[accounts[n]] = consensus::NodeBehavior{accounts[n], !bad, bad ? 1.0 : cfg.online_probability};
        }
        if (cfg.adversary == AdversaryKind::fixed_budget) {
          const Tokens t = to_tokens(cfg.adversary_budget);
          if (t > 0) balances[kAdversary] = t;
          behaviors[kAdversary] = consensus::NodeBehavior{kAdversary, false, 1.0};
        }
        if (!chains[m]) {
          consensus::ChainConfig cc{"chain-" + std::to_string(m), cfg.slots_per_epoch, cfg.committee_size,
                                    cfg.deposit, to_tokens(g.rewards[m]), cfg.slot_seconds};
          chains[m] = consensus::make_chain(cc, balances, keys, derive_seed(cfg.rng_seed, "genesis", m));
        } else {
          chains[m]->ledger.stake.reset_balances(balances);
          chains[m]->reward = to_tokens(g.rewards[m]);
        }
        traffic[m] = Traffic("pay/" + std::to_string(m) + "/" + std::to_string(epoch) + "/", honest);
        pending[m].clear();
        const auto run = run_chain_epoch(*chains[m], behaviors, traffic[m], pending[m], chain_rngs[m]);
        row.measured_empty_fraction = run.empty_fraction;
        row.halted = run.halted;
      }
      rows.push_back(row);
    }

    // (5) budget perturbation of n_delta distinct stakeholders
    std::vector<std::size_t> idx(N);
    std::iota(idx.begin(), idx.end(), 0);
    const std::size_t k = cfg.perturbed();
    for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + uniform_index(perturb_rng, N - i)]);
    std::vector<double> old = g.budgets;
    for (std::size_t i = 0; i < k; ++i) {
      const double delta = uniform(perturb_rng, 0.0, cfg.delta_s);
      const bool up = bernoulli(perturb_rng, 0.5);
      g.budgets[idx[i]] *= up ? 1.0 + delta : 1.0 - delta;
    }
    // Carry allocations into the next epoch, scaled to the new budgets.
    for (std::size_t n = 0; n < N; ++n)
      for (auto& x : profile[n]) x *= g.budgets[n] / old[n];
  }
  return rows;
}

std::size_t EmptyBlockAttack::windows_exceeding(std::size_t l, double theta) const {
  std::size_t count = 0;
  for (std::size_t w = 0; w < windows(l); ++w) {
    std::size_t e = 0;
    for (std::size_t i = w * l; i < (w + 1) * l; ++i) e += empty[i] ? 1 : 0;
    if (static_cast<double>(e) > theta * static_cast<double>(l)) ++count;
  }
  return count;
}

EmptyBlockAttack empty_block_attack(const consensus::ChainConfig& config, double ratio, std::uint64_t slots,
                                    const Seed& seed) {
  if (!(ratio >= 0.0 && ratio < 1.0)) fail(Errc::DomainError, "adversarial ratio must lie in [0, 1)");
  constexpr Tokens kTotal = 1'000'000;
  constexpr std::size_t kHonest = 50;
  const Tokens adversary = static_cast<Tokens>(std::llround(ratio * static_cast<double>(kTotal)));

  std::map<AccountId, Tokens> balances;
  std::vector<AccountId> honest;
  for (std::size_t i = 0; i < kHonest; ++i) honest.push_back(stakeholder_id(i));
  const Tokens share = (kTotal - adversary) / static_cast<Tokens>(kHonest);
  for (std::size_t i = 0; i < kHonest; ++i)
    balances[honest[i]] = share + (i == 0 ? (kTotal - adversary) - share * static_cast<Tokens>(kHonest) : 0);
  if (adversary > 0) balances[kAdversary] = adversary;

  std::vector<AccountId> keyed = honest;
  keyed.push_back(kAdversary);
  auto state = consensus::make_chain(config, balances, ledger::KeyRing::derive(derive_seed(seed, "keys", 0), keyed),
                                     derive_seed(seed, "genesis", 0));
  consensus::Behaviors behaviors;
  consensus::NodeBehavior bad{kAdversary, false, 1.0, consensus::Strategy::empty_blocks, false};
  behaviors[kAdversary] = bad;

  auto rng = make_rng(seed, "empty-block-attack");
  Traffic traffic("pay/", honest);
  std::vector<ledger::Transaction> pending;
  EmptyBlockAttack out;
  out.empty.reserve(slots + state.slots_per_epoch);
  while (out.empty.size() < slots) {
    const auto run = run_chain_epoch(state, behaviors, traffic, pending, rng, &out.empty);
    if (run.halted) ++out.halted_epochs;
  }
  out.empty.resize(slots);
  const auto n_empty = std::count(out.empty.begin(), out.empty.end(), true);
  out.empty_fraction = slots ? static_cast<double>(n_empty) / static_cast<double>(slots) : 0.0;
  return out;
}

}  // namespace fedchain::sim
