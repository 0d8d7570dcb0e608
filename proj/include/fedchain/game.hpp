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
#include <vector>

#include <Eigen/Dense>

namespace fedchain::game {

/// Stakeholders (followers) split budgets across chains whose operators
/// (leaders) post block rewards.
struct GameInstance {
  std::vector<double> budgets;  // B_n
  std::vector<double> rewards;  // R_m

  std::size_t N() const noexcept { return budgets.size(); }
  std::size_t M() const noexcept { return rewards.size(); }
  /// Throws DomainError unless M >= 2, N >= 1 and all values are positive.
  void validate() const;
};

/// s[n][m]: stake follower n places on chain m.
using StrategyProfile = std::vector<std::vector<double>>;

/// Throws InfeasibleProfile on shape mismatch, negative stake or overspent budget.
void check_feasible(const GameInstance& g, const StrategyProfile& s);

/// Stake others place on each chain, from follower n's point of view.
std::vector<double> opponent_totals(const StrategyProfile& s, std::size_t n);

/// Sum over chains of R_m s_n^m / (s_n^m + T_m). A chain nobody stakes on pays 0.
double follower_utility(const GameInstance& g, const StrategyProfile& s, std::size_t n);

/// Utility-maximizing split of budget B against opponent totals T, by exact
/// water-filling on the KKT conditions: x_m = max(0, sqrt(R_m T_m / lambda) - T_m).
/// A chain with T_m = 0 pays R_m for any positive stake; it receives a
/// reserve of budget * 1e-9. When every T_m is 0 the split is proportional to R.
std::vector<double> best_response(const std::vector<double>& rewards, const std::vector<double>& opponents,
                                  double budget);
std::vector<double> best_response(const GameInstance& g, const StrategyProfile& s, std::size_t n);

/// True when every opponent total is zero, so no strict maximizer exists.
bool degenerate_opponents(const StrategyProfile& s, std::size_t n);

/// s_n^m = B_n R_m / sum(R), the unique follower equilibrium.
StrategyProfile follower_equilibrium(const GameInstance& g);

struct Dynamics {
  StrategyProfile profile;
  std::size_t rounds = 0;
  bool converged = false;
};

/// Followers 1..N best-respond in turn until a full round moves no stake by
/// more than `tol`.
Dynamics best_response_dynamics(const GameInstance& g, StrategyProfile start, std::size_t max_rounds = 10000,
                                double tol = 1e-9);

struct LeaderUtility {
  double value = 0.0;
  /// Some equilibrium stake is <= 1, so its log weight is zero or negative.
  bool negative_weight = false;
};

/// Sum_n s*_n^m ln(s*_n^m) - R_m at the follower equilibrium.
LeaderUtility leader_utility(const GameInstance& g, std::size_t m);

/// ((M - 1) / M^2) sum_n B_n (1 + ln(B_n / M)), the symmetric leader optimum.
/// Throws NonpositiveReward when the value is <= 0.
double leader_optimum(const std::vector<double>& budgets, std::size_t M);

/// Jacobian of the stacked follower gradients (weights 1), indexed n * M + m.
/// Throws BoundaryProfile unless N >= 2 and every stake is positive.
Eigen::MatrixXd pseudo_gradient_jacobian(const GameInstance& g, const StrategyProfile& s);

/// True when G + G^T is negative definite, the uniqueness condition.
bool rosen_check(const GameInstance& g, const StrategyProfile& s);

}  // namespace fedchain::game
