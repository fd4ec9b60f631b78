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

#include "qppp/bitstring.hpp"

#include <bit>
#include <stdexcept>

namespace qppp {

BitString::BitString(int size) : size_(size) {
  if (size < 0 || size > kMaxBits) {
    throw std::length_error("BitString: size " + std::to_string(size) +
                            " outside [0, " + std::to_string(kMaxBits) + "]");
  }
}

BitString BitString::from_string(std::string_view text) {
  BitString out(static_cast<int>(text.size()));
  for (int i = 0; i < out.size_; ++i) {
    const char c = text[static_cast<std::size_t>(i)];
    if (c != '0' && c != '1') {
      throw std::invalid_argument("BitString: invalid character in \"" +
                                  std::string(text) + "\"");
    }
    out.set(i, c == '1');
  }
  return out;
}

BitString BitString::from_uint(std::uint64_t value, int width) {
  BitString out(width);
  out.set_field(0, width, value);
  return out;
}

bool BitString::at(int i) const {
  if (i < 0 || i >= size_) {
    throw std::out_of_range("BitString: index " + std::to_string(i) +
                            " out of range for size " + std::to_string(size_));
  }
  return (*this)[i];
}

std::uint64_t BitString::field(int start, int width) const {
  if (width < 0 || width > 64 || start < 0 || start + width > size_) {
    throw std::out_of_range("BitString::field: bad range");
  }
  std::uint64_t value = 0;
  for (int i = 0; i < width; ++i) {
    value = (value << 1) | static_cast<std::uint64_t>((*this)[start + i]);
  }
  return value;
}

void BitString::set_field(int start, int width, std::uint64_t value) {
  if (width < 0 || width > 64 || start < 0 || start + width > size_) {
    throw std::out_of_range("BitString::set_field: bad range");
  }
  for (int i = width - 1; i >= 0; --i) {
    set(start + i, value & 1u);
    value >>= 1;
  }
}

BitString BitString::slice(int start, int width) const {
  if (start < 0 || width < 0 || start + width > size_) {
    throw std::out_of_range("BitString::slice: bad range");
  }
  BitString out(width);
  const std::size_t word_shift = static_cast<std::size_t>(start >> 6);
  const int bit_shift = start & 63;
  const std::size_t n = words_.size();
  for (std::size_t w = 0; w + word_shift < n; ++w) {
    std::uint64_t lo = words_[w + word_shift] >> bit_shift;
    if (bit_shift != 0 && w + word_shift + 1 < n) {
      lo |= words_[w + word_shift + 1] << (64 - bit_shift);
    }
    out.words_[w] = lo;
  }
  for (std::size_t w = 0; w < n; ++w) {
    const int lo_bit = static_cast<int>(w) * 64;
    if (lo_bit >= width) {
      out.words_[w] = 0;
    } else if (lo_bit + 64 > width) {
      out.words_[w] &= (std::uint64_t{1} << (width - lo_bit)) - 1;
    }
  }
  return out;
}

BitString BitString::resized(int new_size) const {
  BitString out(new_size);
  const int keep = new_size < size_ ? new_size : size_;
  for (int i = 0; i < keep; ++i) out.set(i, (*this)[i]);
  return out;
}

BitString BitString::with_slice(int start, const BitString& other) const {
  if (start < 0 || start + other.size_ > size_) {
    throw std::out_of_range("BitString::with_slice: bad range");
  }
  BitString out = *this;
  for (int i = 0; i < other.size_; ++i) out.set(start + i, other[i]);
  return out;
}

int BitString::popcount() const noexcept {
  int total = 0;
  for (auto w : words_) total += std::popcount(w);
  return total;
}

std::string BitString::to_string() const {
  std::string out(static_cast<std::size_t>(size_), '0');
  for (int i = 0; i < size_; ++i) {
    if ((*this)[i]) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

std::size_t BitString::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(size_);
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace qppp
