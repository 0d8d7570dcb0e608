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

#include "fedchain/rng.hpp"

#include <array>
#include <charconv>

#include "fedchain/common.hpp"

namespace fedchain {

Seed parse_seed(std::string_view text) {
  if (text.size() == 2 * Digest::kSize) return Digest::from_hex(text);
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end)
    fail(Errc::ConfigError, "seed must be a decimal integer or 64 hex characters: '" +
                                std::string(text) + "'");
  return seed_from_u64(value);
}

Seed seed_from_u64(std::uint64_t value) {
  std::array<std::uint8_t, Digest::kSize> bytes{};
  for (int i = 0; i < 8; ++i) bytes[Digest::kSize - 1 - i] = static_cast<std::uint8_t>(value >> (8 * i));
  return Digest(bytes);
}

std::mt19937_64 make_rng(const Seed& seed, std::string_view label) {
  const Digest stream = ByteWriter().digest(seed).str(label).hash();
  std::array<std::uint32_t, 8> words{};
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& b = stream.bytes();
    words[i] = (std::uint32_t{b[4 * i]} << 24) | (std::uint32_t{b[4 * i + 1]} << 16) |
               (std::uint32_t{b[4 * i + 2]} << 8) | std::uint32_t{b[4 * i + 3]};
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

}  // namespace fedchain
