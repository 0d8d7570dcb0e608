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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fedchain {

/// 256-bit SHA-256 output. Ordered lexicographically by byte.
class Digest {
 public:
  static constexpr std::size_t kSize = 32;

  constexpr Digest() = default;
  explicit constexpr Digest(const std::array<std::uint8_t, kSize>& bytes) : bytes_(bytes) {}

  static Digest from_hex(std::string_view hex);

  const std::array<std::uint8_t, kSize>& bytes() const noexcept { return bytes_; }
  std::span<const std::uint8_t> span() const noexcept { return bytes_; }
  bool is_zero() const noexcept;
  std::string hex() const;

  /// Remainder of the big-endian 256-bit integer modulo `modulus` (> 0).
  std::uint64_t mod(std::uint64_t modulus) const noexcept;

  auto operator<=>(const Digest&) const = default;

 private:
  std::array<std::uint8_t, kSize> bytes_{};
};

Digest sha256(std::span<const std::uint8_t> data);
Digest sha256(std::string_view data);

/// Canonical byte encoding shared by blocks, transactions and SPV proofs.
///
/// Every field is written as a 4-byte big-endian length followed by its bytes,
/// in declaration order. Integers are 8-byte big-endian, so an integer field
/// occupies 12 bytes.
class ByteWriter {
 public:
  ByteWriter& u64(std::uint64_t value);
  ByteWriter& i64(std::int64_t value) { return u64(static_cast<std::uint64_t>(value)); }
  ByteWriter& str(std::string_view value);
  ByteWriter& digest(const Digest& value);
  ByteWriter& raw(std::span<const std::uint8_t> bytes);

  const std::vector<std::uint8_t>& bytes() const noexcept { return buf_; }
  Digest hash() const { return sha256(buf_); }

 private:
  void length(std::size_t n);

  std::vector<std::uint8_t> buf_;
};

}  // namespace fedchain
