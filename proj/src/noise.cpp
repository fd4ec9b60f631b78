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

#include "qppp/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "qppp/text.hpp"

namespace qppp {

double round_to_grid(double value, double step) {
  return std::round(value / step) * step;
}

bool on_grid(double value, double step) {
  return round_to_grid(value, step) == value;
}

NoiseGenerator::NoiseGenerator(Kind kind, double delta)
    : kind_(kind), delta_(delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("NoiseGenerator: delta must be positive");
  }
}

double NoiseGenerator::sample_raw(Stream& rng) const {
  const double d = delta_;
  switch (kind_) {
    case Kind::kR0:
      return -d + 2.0 * d * uniform01(rng);
    case Kind::kR1: {
      double r = -d + 2.0 * d * uniform01(rng);
      if (r > 0.0) r += 0.5 * d;
      if (r < 0.0) r -= 0.5 * d;
      return r;
    }
    case Kind::kR2: {
      double r = -d + 2.0 * d * uniform01(rng);
      if (r > 0.0) {
        r *= 2.0;
      } else if (r < 0.0) {
        r -= 0.5 * d;
      }
      return r;
    }
    case Kind::kR3:
      return std::normal_distribution<double>(0.0, d)(rng);
    case Kind::kR4: {
      double r = std::normal_distribution<double>(0.0, d)(rng);
      if (r > 0.0) {
        // c - U[0, c) lands in (0, c].
        const double c = kR4PositiveSpan * d;
        r = c - c * uniform01(rng);
      }
      return r;
    }
  }
  return 0.0;
}

double NoiseGenerator::sample(Stream& rng) const {
  return round_to_grid(sample_raw(rng));
}

std::string NoiseGenerator::to_string() const {
  return std::string(qppp::to_string(kind_)) + ":delta=" + format_number(delta_);
}

std::string_view to_string(NoiseGenerator::Kind kind) {
  switch (kind) {
    case NoiseGenerator::Kind::kR0:
      return "R0";
    case NoiseGenerator::Kind::kR1:
      return "R1";
    case NoiseGenerator::Kind::kR2:
      return "R2";
    case NoiseGenerator::Kind::kR3:
      return "R3";
    case NoiseGenerator::Kind::kR4:
      return "R4";
  }
  return "?";
}

NoiseGenerator::Kind parse_generator_kind(std::string_view text) {
  if (text.size() == 2 && (text[0] == 'R' || text[0] == 'r') &&
      text[1] >= '0' && text[1] <= '4') {
    return static_cast<NoiseGenerator::Kind>(text[1] - '0');
  }
  throw std::invalid_argument("unknown generator '" + std::string(text) +
                              "' (expected R0..R4)");
}

NoiseGenerator parse_generator(std::string_view text) {
  const auto parts = split(text, ':');
  const auto kind = parse_generator_kind(parts[0]);
  double delta = -1.0;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string_view::npos || parts[i].substr(0, eq) != "delta") {
      throw std::invalid_argument("bad generator option '" +
                                  std::string(parts[i]) + "'");
    }
    delta = parse_real(parts[i].substr(eq + 1));
  }
  if (delta < 0.0) {
    throw std::invalid_argument("generator '" + std::string(text) +
                                "' is missing delta=");
  }
  return NoiseGenerator(kind, delta);
}

FixedPointCodec::FixedPointCodec(int n, int n1, double offset)
    : n_(n), n1_(n1), offset_(offset), resolution_(std::ldexp(1.0, n1 - n)) {
  if (n < 1 || n > kMaxBits || n1 < 1 || n1 > n) {
    throw std::invalid_argument("FixedPointCodec: need 1 <= n1 <= n <= " +
                                std::to_string(kMaxBits));
  }
  if (!std::isfinite(offset)) {
    throw std::invalid_argument("FixedPointCodec: offset must be finite");
  }
}

double FixedPointCodec::max_value() const noexcept {
  return decode_code((std::uint64_t{1} << n_) - 1);
}

bool FixedPointCodec::in_range(double value) const noexcept {
  const double shifted = value + offset_;
  return shifted >= 0.0 && shifted < std::ldexp(1.0, n1_);
}

std::uint64_t FixedPointCodec::encode_code(double value) const {
  if (!in_range(value)) {
    throw std::out_of_range("FixedPointCodec: " + format_number(value) +
                            " outside [" + format_number(min_value()) + ", " +
                            format_number(min_value() + std::ldexp(1.0, n1_)) +
                            ")");
  }
  const std::uint64_t top = (std::uint64_t{1} << n_) - 1;
  const double scaled = std::round((value + offset_) / resolution_);
  const auto code = static_cast<std::uint64_t>(scaled);
  return code > top ? top : code;
}

BitString FixedPointCodec::encode(double value) const {
  return BitString::from_uint(encode_code(value), n_);
}

double FixedPointCodec::decode(const BitString& bits) const {
  if (bits.size() != n_) {
    throw std::invalid_argument("FixedPointCodec: expected " +
                                std::to_string(n_) + " bits, got " +
                                std::to_string(bits.size()));
  }
  return decode_code(bits.field(0, n_));
}

FixedPointCodec default_codec() { return FixedPointCodec(16, 5, 8.0); }

}  // namespace qppp
