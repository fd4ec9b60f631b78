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

#ifndef QPPP_RNG_HPP_
#define QPPP_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace qppp {

/// Every sampling operation takes one of these explicitly.
using Stream = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Pure derivation of a child seed from a master seed and a path of indices,
/// e.g. (master, cell, rep, role). Order matters; no two paths of the same
/// length collide in practice.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(master);
  for (std::uint64_t p : path) h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ull));
  return h;
}

inline Stream derive_stream(std::uint64_t master,
                            std::initializer_list<std::uint64_t> path) {
  return Stream(derive_seed(master, path));
}

/// Stream role tags used as the last path element.
enum StreamRole : std::uint64_t {
  kAliceRole = 1,
  kBobRole = 2,
  kNoiseRole = 3,
  kPermutationRole = 4,
  kDataRole = 5,
  kDistortionRole = 6,
  kResampleRole = 7,
};

inline double uniform01(Stream& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline bool fair_coin(Stream& rng) { return (rng() >> 63) != 0; }

/// Uniform integer in [lo, hi].
inline int uniform_int(Stream& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace qppp

#endif  // QPPP_RNG_HPP_
