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

// Shared fixtures and independent reference implementations for the tests.

#pragma once

#include <cmath>
#include <optional>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fedchain/ledger.hpp"
#include "fedchain/rng.hpp"

namespace testing {

using fedchain::AccountId;
using fedchain::Tokens;
namespace ledger = fedchain::ledger;

inline ledger::KeyRing keys_for(const std::vector<AccountId>& ids, std::uint64_t seed = 1) {
  return ledger::KeyRing::derive(fedchain::seed_from_u64(seed), ids);
}

/// One chain with a fixed leader list for epoch 0 and a funded genesis state.
struct MiniChain {
  ledger::ScheduleBook book;
  ledger::KeyRing keys;
  ledger::Fork fork;
  ledger::LedgerState state;
  ledger::ForkContext ctx;

  MiniChain(std::vector<AccountId> leaders, const std::vector<std::pair<AccountId, Tokens>>& balances,
            Tokens reward = 0)
      : book(leaders.size()) {
    std::vector<AccountId> ids;
    for (const auto& [id, _] : balances) ids.push_back(id);
    for (const auto& l : leaders) ids.push_back(l);
    keys = keys_for(ids);
    book.set_epoch(0, std::move(leaders), reward);
    fork.blocks.push_back(ledger::make_genesis("test-chain"));
    for (const auto& [id, amount] : balances) state.stake.credit(id, amount);
    ctx = ledger::ForkContext{&book, &keys, 0, fork.blocks.front().digest(), state};
  }

  /// Signed block by the scheduled leader of the next height.
  ledger::Block next_block(const ledger::Fork& on, std::vector<ledger::Transaction> txs = {}) const {
    const auto height = on.tip().height() + 1;
    const AccountId* leader = book.leader_at(height);
    auto b = ledger::make_block(on.tip(), book.epoch_of(height), *leader, std::move(txs));
    ledger::sign_block(b, keys);
    return b;
  }

  void extend(std::vector<ledger::Transaction> txs = {}) {
    ledger::append_block(fork, state, next_block(fork, std::move(txs)), book, keys);
  }
};

/// P[X > t] for X ~ Binomial(n, p) by iterating Pascal's rule on the pmf in
/// long double; no lgamma, no closed forms.
inline double binomial_tail_pascal(int n, double p, int t) {
  std::vector<long double> pmf(static_cast<std::size_t>(n) + 1, 0.0L);
  pmf[0] = 1.0L;
  for (int trial = 1; trial <= n; ++trial) {
    for (int k = trial; k >= 1; --k) pmf[k] = pmf[k] * (1.0L - p) + pmf[k - 1] * p;
    pmf[0] *= (1.0L - p);
  }
  long double tail = 0.0L;
  for (int k = t + 1; k <= n; ++k) tail += pmf[k];
  return static_cast<double>(tail);
}

/// Best value of sum_m R_m x_m / (x_m + T_m) over grid points x_m = k_m B / steps
/// with sum k_m = steps, by dynamic programming over chains (exhaustive over the grid).
inline double grid_best_utility(const std::vector<double>& R, const std::vector<double>& T, double B, int steps) {
  auto term = [&](std::size_t m, int k) {
    const double x = B * k / steps;
    if (x == 0.0) return 0.0;
    return R[m] * x / (x + T[m]);
  };
  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<double> best(static_cast<std::size_t>(steps) + 1, ninf);
  for (int k = 0; k <= steps; ++k) best[k] = term(0, k);
  for (std::size_t m = 1; m < R.size(); ++m) {
    std::vector<double> next(best.size(), ninf);
    for (int used = 0; used <= steps; ++used)
      for (int k = 0; used + k <= steps; ++k) next[used + k] = std::max(next[used + k], best[used] + term(m, k));
    best = std::move(next);
  }
  return best[steps];
}

/// Error code raised by f, or nullopt when it returns normally.
template <class F>
std::optional<fedchain::Errc> errc_of(F&& f) {
  try {
    f();
  } catch (const fedchain::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline double binomial_sigma(double p, double trials) { return std::sqrt(p * (1.0 - p) / trials); }

}  // namespace testing
