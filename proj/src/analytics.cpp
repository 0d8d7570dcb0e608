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

#include "fedchain/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fedchain/common.hpp"

namespace fedchain::analytics {

namespace {

void require(bool ok, const char* what) {
  if (!ok) fail(Errc::DomainError, what);
}

void require_gamma(double gamma) { require(gamma > 0.0 && gamma <= 1.0, "gamma must lie in (0, 1]"); }

void require_ratio_open(double ratio) {
  require(ratio > 0.0 && ratio < 1.0, "adversarial ratio must lie in (0, 1)");
}

double log_binomial_pmf(std::int64_t n, std::int64_t k, double log_p, double log_q) {
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0) + kk * log_p +
         (nn - kk) * log_q;
}

// P[X > threshold], X ~ Binomial(n, p), 0 < p < 1.
double binomial_upper_tail(std::int64_t n, double p, std::int64_t threshold) {
  if (threshold >= n) return 0.0;
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  if (n <= 1000) {
    double sum = 0.0;
    for (std::int64_t k = n; k > threshold; --k) sum += std::exp(log_binomial_pmf(n, k, log_p, log_q));
    return std::min(sum, 1.0);
  }
  double peak = -std::numeric_limits<double>::infinity();
  for (std::int64_t k = threshold + 1; k <= n; ++k) peak = std::max(peak, log_binomial_pmf(n, k, log_p, log_q));
  double acc = 0.0;
  for (std::int64_t k = threshold + 1; k <= n; ++k)
    acc += std::exp(log_binomial_pmf(n, k, log_p, log_q) - peak);
  return std::min(std::exp(peak + std::log(acc)), 1.0);
}

}  // namespace

void SecurityParams::validate() const {
  require_gamma(gamma);
  require(kappa >= 0, "kappa must be >= 0");
  require(l >= 0, "l must be >= 0");
  require(mu > 0.0 && mu <= 1.0, "mu must lie in (0, 1]");
  require(delta > 0.0 && delta <= 1.0, "delta must lie in (0, 1]");
  require(varsigma >= 1, "varsigma must be >= 1");
  require(tau > 0.0 && tau <= 1.0, "tau must lie in (0, 1]");
}

double pr_cp(double gamma, std::int64_t kappa) {
  require_gamma(gamma);
  require(kappa >= 0, "kappa must be >= 0");
  return std::pow(1.0 - gamma, static_cast<double>(kappa));
}

double pr_cq_bound(double gamma, std::int64_t l, double delta) {
  require_gamma(gamma);
  require(l >= 0, "l must be >= 0");
  require(delta > 0.0 && delta <= 1.0, "delta must lie in (0, 1]");
  const double v = 1.0 - std::exp(static_cast<double>(l) * (gamma - 1.0) * delta * delta / 2.0);
  return std::clamp(v, 0.0, 1.0);
}

double pr_cq_exact(double gamma, std::int64_t l, std::int64_t threshold) {
  require_gamma(gamma);
  require(l >= 0, "l must be >= 0");
  require(threshold >= 0 && threshold <= l, "threshold must lie in [0, l]");
  const double p = 1.0 - gamma;
  if (p <= 0.0) return 0.0;
  return binomial_upper_tail(l, p, threshold);
}

double Confirmation::minutes_one_decimal() const noexcept {
  // The epsilon keeps exact tenths (e.g. 2.0 from 120 s) from truncating down.
  return std::floor(minutes() * 10.0 + 1e-9) / 10.0;
}

std::int64_t confirm_depth(double adversarial_ratio, double target) {
  require(adversarial_ratio >= 0.0 && adversarial_ratio < 1.0, "adversarial ratio must lie in [0, 1)");
  require(target > 0.0 && target < 1.0, "target probability must lie in (0, 1)");
  if (adversarial_ratio == 0.0) return 1;
  // ratio^k is compared with a relative slack so that 0.1^3 counts as 1e-3.
  const double limit = target * (1.0 + 1e-12);
  std::int64_t kappa = 1;
  double p = adversarial_ratio;
  while (p > limit) {
    p *= adversarial_ratio;
    ++kappa;
  }
  return kappa;
}

Confirmation confirmation_time(double adversarial_ratio, double slot_seconds, double target) {
  require_ratio_open(adversarial_ratio);
  require(slot_seconds > 0.0, "slot duration must be positive");
  const auto kappa = confirm_depth(adversarial_ratio, target);
  return Confirmation{kappa, static_cast<double>(kappa) * slot_seconds};
}

double throughput_threshold(double adversarial_ratio, std::int64_t l, double target) {
  require_ratio_open(adversarial_ratio);
  require(l >= 1, "l must be >= 1");
  require(target > 0.0 && target < 1.0, "target probability must lie in (0, 1)");
  for (std::int64_t k = 0; k < l; ++k) {
    if (binomial_upper_tail(l, adversarial_ratio, k) < target)
      return static_cast<double>(k) / static_cast<double>(l);
  }
  return 1.0;
}

double cp_race_oracle(double gamma, std::int64_t kappa, std::int64_t trials, const Seed& seed) {
  require_gamma(gamma);
  require(kappa >= 0, "kappa must be >= 0");
  require(trials >= 1, "trials must be >= 1");
  auto rng = make_rng(seed, "cp-race");
  const double adversary = 1.0 - gamma;
  std::int64_t hits = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    bool all_adversarial = true;
    for (std::int64_t s = 0; s < kappa && all_adversarial; ++s)
      all_adversarial = bernoulli(rng, adversary);
    if (all_adversarial) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace fedchain::analytics
