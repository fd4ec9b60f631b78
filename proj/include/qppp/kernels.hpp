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

// Monte Carlo drivers. Trial t always draws from streams derived from
// (seed, t, role), and tallies are integer sums, so the OpenMP and serial
// paths return identical results for any thread count.

#ifndef QPPP_KERNELS_HPP_
#define QPPP_KERNELS_HPP_

#include <cstdint>
#include <vector>

#include "qppp/baselines.hpp"
#include "qppp/execution.hpp"
#include "qppp/perceptron.hpp"
#include "qppp/protocol.hpp"

namespace qppp {

struct ProtocolTally {
  long long trials = 0;
  long long detected = 0;
  long long data_mismatch = 0;
  long long test_mismatch = 0;
  long long correct_answers = 0;  // undetected with answer == f(x)
  long long guess_matched = 0;    // Bob's (m, u) guess equals Alice's
  long long passed_with_guess = 0;  // undetected and guess matched
  long long leaked_bits = 0;

  double rate(long long count) const noexcept {
    return trials ? static_cast<double>(count) / static_cast<double>(trials)
                  : 0.0;
  }
  double detection_rate() const noexcept { return rate(detected); }
  double pass_rate() const noexcept { return rate(trials - detected); }

  ProtocolTally& operator+=(const ProtocolTally& o) noexcept;
  friend bool operator==(const ProtocolTally&, const ProtocolTally&) = default;
};

/// Binomial standard error of a rate.
double binomial_std_error(double p, long long n);

/// `trials` independent runs on uniformly random inputs.
ProtocolTally tally_protocol(const RegisterLayout& layout, const Oracle& f,
                             const BobStrategy& strategy, long long trials,
                             std::uint64_t seed,
                             Execution exec = Execution::kParallel);

struct LeakSequenceStats {
  long long sequences = 0;
  long long total = 0;          // examples leaked, summed over sequences
  long long total_squares = 0;
  long long truncated = 0;      // sequences that hit max_runs undetected

  double mean() const noexcept;
  double std_error() const noexcept;
  friend bool operator==(const LeakSequenceStats&, const LeakSequenceStats&) =
      default;
};

/// Repeats runs on fresh random inputs until the first detection and counts
/// the undetected runs in which Bob read every qubit he targeted.
LeakSequenceStats simulate_leak_sequences(const RegisterLayout& layout,
                                          const Oracle& f,
                                          const BobStrategy& strategy,
                                          long long sequences,
                                          std::uint64_t seed,
                                          Execution exec = Execution::kParallel,
                                          long long max_runs = 1000000);

/// Repetition r uses seed derive_seed(seed, {r}).
std::vector<TrainRecord> quantum_training_reps(
    const TrainingSet& set, const QuantumTrainConfig& config, int reps,
    std::uint64_t seed, Execution exec = Execution::kParallel);

std::vector<TrainRecord> baseline_training_reps(
    const TrainingSet& set, const BaselineMethod& method, int max_rounds,
    int reps, std::uint64_t seed, Execution exec = Execution::kParallel);

std::vector<ReconstructionError> reconstruction_reps(
    const TrainingSet& set, double delta, int cells,
    const ReconstructionOptions& options, int reps, std::uint64_t seed,
    Execution exec = Execution::kParallel);

/// Parity of the data register, a cheap thread-safe oracle for sweeps.
bool parity_oracle(const BitString& data);

}  // namespace qppp

#endif  // QPPP_KERNELS_HPP_
