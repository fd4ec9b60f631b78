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

// Plain perceptron and the privacy-preserving variant in which Bob owns the
// classifier and Alice owns the data.
//
// In the private variant every pass visits the examples in the order
// i XOR u for a fresh mask u. Bob's verdict d on the clean example comes from
// the quantum data system; the update itself uses a noisy copy x + r that
// only Alice can produce.

#ifndef QPPP_PERCEPTRON_HPP_
#define QPPP_PERCEPTRON_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "qppp/data.hpp"
#include "qppp/noise.hpp"
#include "qppp/protocol.hpp"

namespace qppp {

inline constexpr int kDefaultMaxRounds = 40000;

struct Classifier {
  std::vector<double> w;
  double b = 0.0;

  static Classifier zero(int k) { return {std::vector<double>(static_cast<std::size_t>(k), 0.0), 0.0}; }
  friend bool operator==(const Classifier&, const Classifier&) = default;
};

/// 1 iff w . x + b > 0.
bool classify(const Classifier& c, std::span<const double> x);
/// True when every example of `set` gets its own label.
bool classifies_all(const Classifier& c, const TrainingSet& set);

struct TrainRecord {
  bool terminated = false;  // a full pass made no update
  int rounds = 0;           // outer loops executed
  long long updates = 0;
  bool success = false;     // terminated and classifies the original set
  int detection_events = 0;
};

struct TrainResult {
  Classifier classifier;
  TrainRecord record;
};

TrainResult train_classical(const TrainingSet& set,
                            int max_rounds = kDefaultMaxRounds);

/// Per-example tally of what a dishonest Bob learned before training ended.
struct LeakLedger {
  std::vector<int> leaked_bits;  // indexed like the training set
  long long protocol_runs = 0;
  long long undetected_runs = 0;
  /// Undetected runs in which Bob read every qubit he targeted.
  long long examples_leaked = 0;
};

struct QuantumTrainConfig {
  NoiseGenerator generator{NoiseGenerator::Kind::kR0, kGridStep};
  int max_rounds = kDefaultMaxRounds;
  BobStrategy attack;
  std::uint64_t seed = 0;
  /// Honest runs: assert that the protocol answer equals the plain classifier.
  bool check_answers = true;
};

struct QuantumTrainResult {
  Classifier classifier;
  TrainRecord record;
  LeakLedger ledger;
};

/// Requires a power-of-two training set (see pad_to_power_of_two).
QuantumTrainResult train_quantum(const TrainingSet& set,
                                 const QuantumTrainConfig& config);

/// Encodes attributes back to back, one codec word each.
BitString encode_example(const TrainingSet& set, std::span<const double> x);

}  // namespace qppp

#endif  // QPPP_PERCEPTRON_HPP_
