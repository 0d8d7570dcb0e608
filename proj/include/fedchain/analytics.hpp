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

#include "fedchain/rng.hpp"

namespace fedchain::analytics {

/// Violation-probability parameters. gamma is the honest stake ratio.
struct SecurityParams {
  double gamma = 1.0;        // (0, 1]
  std::int64_t kappa = 6;    // CP depth
  std::int64_t l = 100;      // CQ window
  double mu = 1.0;           // CQ quality, (0, 1]; mu = gamma in the ideal case
  double delta = 0.5;        // Chernoff slack, (0, 1]
  std::int64_t varsigma = 1; // CG window
  double tau = 1.0;          // CG speed, (0, 1]

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

inline constexpr double kDefaultTarget = 1e-3;

/// (1 - gamma)^kappa.
double pr_cp(double gamma, std::int64_t kappa);

/// 1 - exp(l (gamma - 1) delta^2 / 2), clamped to [0, 1]. Evaluated literally;
/// it is not a bound on pr_cq_exact.
double pr_cq_bound(double gamma, std::int64_t l, double delta);

/// P[X > threshold] for X ~ Binomial(l, 1 - gamma), summed exactly (log-space
/// terms past l = 1000).
double pr_cq_exact(double gamma, std::int64_t l, std::int64_t threshold);

struct Confirmation {
  std::int64_t kappa = 0;
  double seconds = 0.0;

  double minutes() const noexcept { return seconds / 60.0; }
  /// Minutes truncated to one decimal, the precision confirmation tables use.
  double minutes_one_decimal() const noexcept;
};

/// Smallest kappa with ratio^kappa <= target, and kappa * slot_seconds.
/// ratio must lie in (0, 1).
Confirmation confirmation_time(double adversarial_ratio, double slot_seconds = 20.0,
                               double target = kDefaultTarget);

/// As confirmation_time's kappa, but ratio 0 gives 1. ratio must lie in [0, 1).
std::int64_t confirm_depth(double adversarial_ratio, double target = kDefaultTarget);

/// Theta = k / l for the smallest k with P[X > k] < target, X ~ Binomial(l, ratio):
/// the adversary reduces throughput by more than Theta with probability below target.
double throughput_threshold(double adversarial_ratio, std::int64_t l, double target = kDefaultTarget);

/// Monte-Carlo estimate of pr_cp: fraction of trials in which the adversary
/// leads all kappa slots of a window starting at a fixed slot.
double cp_race_oracle(double gamma, std::int64_t kappa, std::int64_t trials, const Seed& seed);

}  // namespace fedchain::analytics
