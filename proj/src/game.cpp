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

#include "fedchain/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fedchain/common.hpp"

namespace fedchain::game {

namespace {

constexpr double kReserve = 1e-9;

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

void GameInstance::validate() const {
  if (M() < 2) fail(Errc::DomainError, "game needs at least two chains");
  if (N() < 1) fail(Errc::DomainError, "game needs at least one stakeholder");
  for (double b : budgets)
    if (!(b > 0.0) || !std::isfinite(b)) fail(Errc::DomainError, "budgets must be positive");
  for (double r : rewards)
    if (!(r > 0.0) || !std::isfinite(r)) fail(Errc::DomainError, "rewards must be positive");
}

void check_feasible(const GameInstance& g, const StrategyProfile& s) {
  if (s.size() != g.N()) fail(Errc::InfeasibleProfile, "profile has the wrong number of stakeholders");
  for (std::size_t n = 0; n < s.size(); ++n) {
    if (s[n].size() != g.M()) fail(Errc::InfeasibleProfile, "profile has the wrong number of chains");
    for (double x : s[n])
      if (!(x >= 0.0) || !std::isfinite(x)) fail(Errc::InfeasibleProfile, "stakes must be non-negative");
    if (sum(s[n]) > g.budgets[n] * (1.0 + 1e-9))
      fail(Errc::InfeasibleProfile, "stakeholder " + std::to_string(n) + " exceeds its budget");
  }
}

std::vector<double> opponent_totals(const StrategyProfile& s, std::size_t n) {
  if (s.empty()) return {};
  std::vector<double> t(s.front().size(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == n) continue;
    for (std::size_t m = 0; m < t.size(); ++m) t[m] += s[i][m];
  }
  return t;
}

double follower_utility(const GameInstance& g, const StrategyProfile& s, std::size_t n) {
  check_feasible(g, s);
  if (n >= g.N()) fail(Errc::DomainError, "no such stakeholder");
  const auto t = opponent_totals(s, n);
  double u = 0.0;
  for (std::size_t m = 0; m < g.M(); ++m) {
    const double own = s[n][m];
    if (own > 0.0) u += g.rewards[m] * own / (own + t[m]);
  }
  return u;
}

std::vector<double> best_response(const std::vector<double>& rewards, const std::vector<double>& opponents,
                                  double budget) {
  const std::size_t M = rewards.size();
  if (opponents.size() != M) fail(Errc::DomainError, "reward and opponent vectors differ in length");
  if (!(budget > 0.0)) fail(Errc::DomainError, "budget must be positive");

  std::vector<double> x(M, 0.0);
  std::vector<std::size_t> contested;
  std::size_t open = 0;
  for (std::size_t m = 0; m < M; ++m) {
    if (opponents[m] < 0.0) fail(Errc::DomainError, "opponent stake must be non-negative");
    if (opponents[m] > 0.0)
      contested.push_back(m);
    else
      ++open;
  }
  if (contested.empty()) {
    const double total = sum(rewards);
    for (std::size_t m = 0; m < M; ++m) x[m] = budget * rewards[m] / total;
    return x;
  }

  const double reserve = budget * kReserve;
  for (std::size_t m = 0; m < M; ++m)
    if (opponents[m] == 0.0) x[m] = reserve;
  const double spend = budget - reserve * static_cast<double>(open);

  // Chains enter in decreasing order of marginal value at zero stake, R/T.
  std::sort(contested.begin(), contested.end(), [&](std::size_t a, std::size_t b) {
    return rewards[a] / opponents[a] > rewards[b] / opponents[b];
  });
  double sum_t = 0.0;
  double sum_root = 0.0;
  double inv_sqrt_lambda = 0.0;
  std::size_t active = 0;
  for (std::size_t k = 0; k < contested.size(); ++k) {
    const std::size_t m = contested[k];
    sum_t += opponents[m];
    sum_root += std::sqrt(rewards[m] * opponents[m]);
    const double cand = (spend + sum_t) / sum_root;
    // Candidate lambda must leave chain m active: sqrt(R T) * cand > T.
    if (std::sqrt(rewards[m] * opponents[m]) * cand <= opponents[m]) break;
    inv_sqrt_lambda = cand;
    active = k + 1;
  }
  for (std::size_t k = 0; k < active; ++k) {
    const std::size_t m = contested[k];
    x[m] = std::max(0.0, std::sqrt(rewards[m] * opponents[m]) * inv_sqrt_lambda - opponents[m]);
  }
  return x;
}

std::vector<double> best_response(const GameInstance& g, const StrategyProfile& s, std::size_t n) {
  g.validate();
  check_feasible(g, s);
  if (n >= g.N()) fail(Errc::DomainError, "no such stakeholder");
  return best_response(g.rewards, opponent_totals(s, n), g.budgets[n]);
}

bool degenerate_opponents(const StrategyProfile& s, std::size_t n) {
  const auto t = opponent_totals(s, n);
  return std::all_of(t.begin(), t.end(), [](double v) { return v == 0.0; });
}

StrategyProfile follower_equilibrium(const GameInstance& g) {
  g.validate();
  const double total = sum(g.rewards);
  StrategyProfile s(g.N(), std::vector<double>(g.M()));
  for (std::size_t n = 0; n < g.N(); ++n)
    for (std::size_t m = 0; m < g.M(); ++m) s[n][m] = g.budgets[n] * g.rewards[m] / total;
  return s;
}

Dynamics best_response_dynamics(const GameInstance& g, StrategyProfile start, std::size_t max_rounds, double tol) {
  g.validate();
  check_feasible(g, start);
  Dynamics d{std::move(start)};
  while (d.rounds < max_rounds) {
    ++d.rounds;
    double moved = 0.0;
    for (std::size_t n = 0; n < g.N(); ++n) {
      auto next = best_response(g.rewards, opponent_totals(d.profile, n), g.budgets[n]);
      for (std::size_t m = 0; m < g.M(); ++m) moved = std::max(moved, std::abs(next[m] - d.profile[n][m]));
      d.profile[n] = std::move(next);
    }
    if (moved <= tol) {
      d.converged = true;
      break;
    }
  }
  return d;
}

LeaderUtility leader_utility(const GameInstance& g, std::size_t m) {
  g.validate();
  if (m >= g.M()) fail(Errc::DomainError, "no such chain");
  const double total = sum(g.rewards);
  LeaderUtility u;
  for (double b : g.budgets) {
    const double stake = b * g.rewards[m] / total;
    if (stake <= 1.0) u.negative_weight = true;
    u.value += stake * std::log(stake);
  }
  u.value -= g.rewards[m];
  return u;
}

double leader_optimum(const std::vector<double>& budgets, std::size_t M) {
  if (M < 2) fail(Errc::DomainError, "leader optimum needs at least two chains");
  if (budgets.empty()) fail(Errc::DomainError, "no budgets");
  const double m = static_cast<double>(M);
  double acc = 0.0;
  for (double b : budgets) {
    if (!(b > 0.0)) fail(Errc::DomainError, "budgets must be positive");
    acc += b * (1.0 + std::log(b / m));
  }
  const double r = (m - 1.0) / (m * m) * acc;
  if (!(r > 0.0)) fail(Errc::NonpositiveReward, "optimal reward is not positive: " + std::to_string(r));
  return r;
}

Eigen::MatrixXd pseudo_gradient_jacobian(const GameInstance& g, const StrategyProfile& s) {
  g.validate();
  check_feasible(g, s);
  const std::size_t N = g.N();
  const std::size_t M = g.M();
  if (N < 2) fail(Errc::BoundaryProfile, "a single stakeholder has no opponents");
  for (const auto& row : s)
    for (double x : row)
      if (!(x > 0.0)) fail(Errc::BoundaryProfile, "profile is not interior");

  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N * M), static_cast<Eigen::Index>(N * M));
  for (std::size_t m = 0; m < M; ++m) {
    double total = 0.0;
    for (std::size_t n = 0; n < N; ++n) total += s[n][m];
    const double cube = total * total * total;
    const double r = g.rewards[m];
    for (std::size_t n = 0; n < N; ++n) {
      const double own = s[n][m];
      const double others = total - own;
      const auto row = static_cast<Eigen::Index>(n * M + m);
      // d/ds_k of dU_n/ds_n = R T / S^2, where T = S - s_n.
      for (std::size_t k = 0; k < N; ++k) {
        const auto col = static_cast<Eigen::Index>(k * M + m);
        G(row, col) = k == n ? -2.0 * r * others / cube : r * (own - others) / cube;
      }
    }
  }
  return G;
}

bool rosen_check(const GameInstance& g, const StrategyProfile& s) {
  const Eigen::MatrixXd G = pseudo_gradient_jacobian(g, s);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G + G.transpose(), Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) return false;
  return eig.eigenvalues().maxCoeff() < 0.0;
}

}  // namespace fedchain::game
