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
#include <random>
#include <string_view>

#include "fedchain/digest.hpp"

namespace fedchain {

/// 256-bit seed for every randomized routine. Same seed, same output.
using Seed = Digest;

/// Parses a seed given either as 64 hex characters or as a decimal integer.
Seed parse_seed(std::string_view text);

/// Seed derived from a 64-bit value, for tests and defaults.
Seed seed_from_u64(std::uint64_t value);

/// Independent generator for one purpose: `label` separates streams that
/// share a root seed.
std::mt19937_64 make_rng(const Seed& seed, std::string_view label);

/// Uniform in [0, 1) from the top 53 bits; portable across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(std::mt19937_64& rng, double p) { return uniform01(rng) < p; }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, n) by rejection; n > 0.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n);

}  // namespace fedchain
