// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mubkit {

/// Bits are handled as vectors of 0/1 bytes, most significant bit of each
/// byte first, matching the label convention in mub.hpp.

inline std::vector<std::uint8_t> bytes_to_bits(const std::vector<std::uint8_t>& bytes) {
  std::vector<std::uint8_t> bits;
  bits.reserve(bytes.size() * 8);
  for (std::uint8_t b : bytes) {
    for (int i = 7; i >= 0; --i) bits.push_back((b >> i) & 1u);
  }
  return bits;
}

inline std::vector<std::uint8_t> bits_to_bytes(const std::vector<std::uint8_t>& bits) {
  if (bits.size() % 8 != 0) throw std::invalid_argument("bit count is not a whole byte");
  std::vector<std::uint8_t> bytes(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bytes[i / 8] |= static_cast<std::uint8_t>((bits[i] & 1u) << (7 - i % 8));
  }
  return bytes;
}

/// Pack count bits (most significant first) into an integer.
inline std::uint32_t bits_to_uint(const std::uint8_t* bits, int count) {
  std::uint32_t v = 0;
  for (int i = 0; i < count; ++i) v = (v << 1) | (bits[i] & 1u);
  return v;
}

/// Unpack an integer into count bits, most significant first.
inline void uint_to_bits(std::uint32_t v, int count, std::uint8_t* out) {
  for (int i = 0; i < count; ++i) out[i] = (v >> (count - 1 - i)) & 1u;
}

}  // namespace mubkit
