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

#include "fedchain/digest.hpp"

#include <openssl/evp.h>

#include "fedchain/common.hpp"

namespace fedchain {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Digest Digest::from_hex(std::string_view hex) {
  if (hex.size() != 2 * kSize) fail(Errc::DomainError, "digest hex must be 64 characters");
  std::array<std::uint8_t, kSize> out{};
  for (std::size_t i = 0; i < kSize; ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) fail(Errc::DomainError, "invalid hex digit in digest");
    out[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return Digest(out);
}

bool Digest::is_zero() const noexcept {
  for (auto b : bytes_)
    if (b != 0) return false;
  return true;
}

std::string Digest::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * kSize);
  for (auto b : bytes_) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

std::uint64_t Digest::mod(std::uint64_t modulus) const noexcept {
  __extension__ using u128 = unsigned __int128;
  u128 rem = 0;
  for (auto b : bytes_) rem = ((rem << 8) | b) % modulus;
  return static_cast<std::uint64_t>(rem);
}

Digest sha256(std::span<const std::uint8_t> data) {
  std::array<std::uint8_t, Digest::kSize> out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != Digest::kSize) {
    throw std::runtime_error("EVP_Digest(sha256) failed");
  }
  return Digest(out);
}

Digest sha256(std::string_view data) {
  return sha256(std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

void ByteWriter::length(std::size_t n) {
  for (int shift = 24; shift >= 0; shift -= 8) buf_.push_back(static_cast<std::uint8_t>(n >> shift));
}

ByteWriter& ByteWriter::u64(std::uint64_t value) {
  length(8);
  for (int shift = 56; shift >= 0; shift -= 8)
    buf_.push_back(static_cast<std::uint8_t>(value >> shift));
  return *this;
}

ByteWriter& ByteWriter::str(std::string_view value) {
  length(value.size());
  buf_.insert(buf_.end(), value.begin(), value.end());
  return *this;
}

ByteWriter& ByteWriter::digest(const Digest& value) {
  length(Digest::kSize);
  buf_.insert(buf_.end(), value.bytes().begin(), value.bytes().end());
  return *this;
}

ByteWriter& ByteWriter::raw(std::span<const std::uint8_t> bytes) {
  length(bytes.size());
  buf_.insert(buf_.end(), bytes.begin(), bytes.end());
  return *this;
}

}  // namespace fedchain
