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

// Labelled training sets: the three synthetic generators and CSV I/O.
//
// Generated attributes sit on the 1/1024 grid, so they encode exactly under
// the default codec. Every generator redraws a point that falls outside the
// codec range.

#ifndef QPPP_DATA_HPP_
#define QPPP_DATA_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qppp/noise.hpp"
#include "qppp/rng.hpp"

namespace qppp {

struct Example {
  std::vector<double> x;
  bool c = false;
  friend bool operator==(const Example&, const Example&) = default;
};

struct TrainingSet {
  std::vector<Example> examples;
  int k = 2;
  FixedPointCodec codec = default_codec();

  std::size_t size() const noexcept { return examples.size(); }
  int count_class(bool c) const;
  /// Throws if an example has the wrong arity or leaves the codec range.
  void validate() const;
};

/// Two Gaussian blobs, N/2 points each.
struct Set1Params {
  double mean0_x1 = 2.0, mean0_x2 = 6.0;  // class 0
  double mean1_x1 = 6.0, mean1_x2 = 2.0;  // class 1
  double sigma = 1.0;
  /// Class 1 needs x1 - x2 >= margin and class 0 needs x1 - x2 <= -margin.
  double margin = 0.5;
};

/// Gaussian cloud labelled by a fixed line w0 . x + b0 > 0.
struct Set2Params {
  double mean = 3.0;
  double sigma = 2.0;
  double w1 = 2.0, w2 = -1.0, b = -3.0;
  /// Points with |w0 . x + b0| < margin are redrawn.
  double margin = 0.2;
};

/// x2 ~ U[0, span], x1 = x2 + U[0, width], then +shift for class 1.
struct Set3Params {
  double width = 0.5;
  double span = 8.0;
  double shift = 1.5;
};

TrainingSet generate_set1(int n, Stream& rng, const Set1Params& p = {},
                          const FixedPointCodec& codec = default_codec());
TrainingSet generate_set2(int n, Stream& rng, const Set2Params& p = {},
                          const FixedPointCodec& codec = default_codec());
TrainingSet generate_set3(int n, Stream& rng, const Set3Params& p = {},
                          const FixedPointCodec& codec = default_codec());

/// Pads to the next power of two by appending copies of random examples.
TrainingSet pad_to_power_of_two(TrainingSet set, Stream& rng);
bool is_power_of_two(std::size_t n) noexcept;

/// CSV with header "x1,...,xk,class".
void save_dataset(const TrainingSet& set, const std::string& path);
std::string format_dataset(const TrainingSet& set);
TrainingSet load_dataset(const std::string& path,
                         const FixedPointCodec& codec = default_codec());
TrainingSet parse_dataset(std::string_view csv,
                          const FixedPointCodec& codec = default_codec());

/// "gen1:N=64:seed=7", "gen2:N=32", "gen3" or "file:path". A missing seed
/// falls back to `default_seed`; a missing N to 64.
struct DatasetSpec {
  enum class Source { kGenerated, kFile };
  Source source = Source::kGenerated;
  int generator = 1;  // 1..3
  int n = 64;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string path;

  std::string to_string() const;
};

DatasetSpec parse_dataset_spec(std::string_view text);
TrainingSet materialize(const DatasetSpec& spec, std::uint64_t default_seed);

}  // namespace qppp

#endif  // QPPP_DATA_HPP_
