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

// Alice's private noise generators and the fixed-point attribute codec.

#ifndef QPPP_NOISE_HPP_
#define QPPP_NOISE_HPP_

#include <string>
#include <string_view>

#include "qppp/bitstring.hpp"
#include "qppp/rng.hpp"

namespace qppp {

inline constexpr double kGridStep = 1.0 / 1024.0;

/// Nearest multiple of `step`, ties away from zero.
double round_to_grid(double value, double step = kGridStep);
bool on_grid(double value, double step = kGridStep);

/// Upper end of R4's positive-side redraw, in units of delta.
inline constexpr double kR4PositiveSpan = 1.5934;

class NoiseGenerator {
 public:
  enum class Kind { kR0, kR1, kR2, kR3, kR4 };

  NoiseGenerator(Kind kind, double delta);

  Kind kind() const noexcept { return kind_; }
  double delta() const noexcept { return delta_; }

  /// One draw, rounded to the 1/1024 grid.
  double sample(Stream& rng) const;
  /// The same draw before rounding.
  double sample_raw(Stream& rng) const;

  /// "R2:delta=0.5"
  std::string to_string() const;

 private:
  Kind kind_;
  double delta_;
};

std::string_view to_string(NoiseGenerator::Kind kind);
NoiseGenerator::Kind parse_generator_kind(std::string_view text);

/// Parses "R2:delta=0.5" (delta also accepts a ratio such as 1/1024).
NoiseGenerator parse_generator(std::string_view text);

/// Unsigned fixed point after a public shift: value + offset is written with
/// n1 integer bits and n - n1 fraction bits, most significant bit first.
class FixedPointCodec {
 public:
  static constexpr int kMaxBits = 62;

  FixedPointCodec(int n, int n1, double offset);

  int bits() const noexcept { return n_; }
  int integer_bits() const noexcept { return n1_; }
  double offset() const noexcept { return offset_; }
  double resolution() const noexcept { return resolution_; }
  /// Smallest and largest representable values.
  double min_value() const noexcept { return -offset_; }
  double max_value() const noexcept;
  bool in_range(double value) const noexcept;

  /// Round to the nearest code; throws std::out_of_range when value + offset
  /// lies outside [0, 2^n1).
  BitString encode(double value) const;
  std::uint64_t encode_code(double value) const;
  double decode(const BitString& bits) const;
  double decode_code(std::uint64_t code) const noexcept {
    return static_cast<double>(code) * resolution_ - offset_;
  }

  friend bool operator==(const FixedPointCodec&, const FixedPointCodec&) =
      default;

 private:
  int n_;
  int n1_;
  double offset_;
  double resolution_;
};

/// 16-bit words, 5 integer bits, shift 8: covers [-8, 24) at 2^-11.
FixedPointCodec default_codec();

}  // namespace qppp

#endif  // QPPP_NOISE_HPP_
