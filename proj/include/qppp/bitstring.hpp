// Copyright 2026 The qppp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPPP_BITSTRING_HPP_
#define QPPP_BITSTRING_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace qppp {

/// Fixed-capacity bit string with inline storage. Index 0 is the leftmost
/// character of the textual form. Bits at positions >= size() are always zero,
/// so defaulted comparison is value comparison.
class BitString {
 public:
  static constexpr int kMaxBits = 256;

  BitString() = default;
  explicit BitString(int size);

  static BitString from_string(std::string_view text);
  /// `width` bits of `value`, most significant bit first.
  static BitString from_uint(std::uint64_t value, int width);

  int size() const noexcept { return size_; }

  bool operator[](int i) const noexcept {
    return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u;
  }
  bool at(int i) const;

  void set(int i, bool value = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    auto& word = words_[static_cast<std::size_t>(i) >> 6];
    word = value ? (word | mask) : (word & ~mask);
  }
  void flip(int i) noexcept {
    words_[static_cast<std::size_t>(i) >> 6] ^= std::uint64_t{1} << (i & 63);
  }
  void swap_bits(int a, int b) noexcept {
    const bool va = (*this)[a];
    const bool vb = (*this)[b];
    set(a, vb);
    set(b, va);
  }

  /// Bits [start, start + width) read as an unsigned integer, MSB first.
  std::uint64_t field(int start, int width) const;
  void set_field(int start, int width, std::uint64_t value);

  BitString slice(int start, int width) const;
  /// Copy with size changed; new positions are zero.
  BitString resized(int new_size) const;
  /// Copy with `other` written at [start, start + other.size()).
  BitString with_slice(int start, const BitString& other) const;

  int popcount() const noexcept;
  std::string to_string() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  int size_ = 0;
  std::array<std::uint64_t, kMaxBits / 64> words_{};
};

}  // namespace qppp

template <>
struct std::hash<qppp::BitString> {
  std::size_t operator()(const qppp::BitString& b) const noexcept {
    return b.hash();
  }
};

#endif  // QPPP_BITSTRING_HPP_
