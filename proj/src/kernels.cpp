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

#include "qppp/kernels.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

#include <omp.h>

namespace qppp {

namespace {

// Runs fn(i) for i in [0, n). Exceptions from worker threads are rethrown on
// the caller's thread (first one wins).
template <class Fn>
void for_each_index(long long n, Execution exec, Fn&& fn) {
  if (exec == Execution::kSerial) {
    for (long long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
#pragma omp critical(qppp_kernel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

BitString random_input(int width, Stream& rng) {
  BitString x(width);
  std::uint64_t word = 0;
  for (int i = 0; i < width; ++i) {
    if ((i & 63) == 0) word = rng();
    x.set(i, (word >> (i & 63)) & 1u);
  }
  return x;
}

std::size_t targeted_qubits(const BobStrategy& s, const RegisterLayout& layout) {
  return s.qubits.empty() ? static_cast<std::size_t>(layout.data_qubits())
                          : s.qubits.size();
}

}  // namespace

int worker_threads() { return omp_get_max_threads(); }

ProtocolTally& ProtocolTally::operator+=(const ProtocolTally& o) noexcept {
  trials += o.trials;
  detected += o.detected;
  data_mismatch += o.data_mismatch;
  test_mismatch += o.test_mismatch;
  correct_answers += o.correct_answers;
  guess_matched += o.guess_matched;
  passed_with_guess += o.passed_with_guess;
  leaked_bits += o.leaked_bits;
  return *this;
}

double binomial_std_error(double p, long long n) {
  if (n <= 0) return 0.0;
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

ProtocolTally tally_protocol(const RegisterLayout& layout, const Oracle& f,
                             const BobStrategy& strategy, long long trials,
                             std::uint64_t seed, Execution exec) {
  if (trials < 0) throw std::invalid_argument("tally_protocol: trials < 0");
  strategy.validate(layout);
  const ProtocolParams params{layout, f, false};
  std::vector<ProtocolTally> per_trial(static_cast<std::size_t>(trials));
  for_each_index(trials, exec, [&](long long t) {
    const auto tt = static_cast<std::uint64_t>(t);
    Stream data = derive_stream(seed, {tt, kDataRole});
    Stream alice = derive_stream(seed, {tt, kAliceRole});
    Stream bob = derive_stream(seed, {tt, kBobRole});
    const BitString x = random_input(layout.data_qubits(), data);
    const ProtocolOutcome out = run_data_system(x, params, strategy, alice, bob);
    ProtocolTally& r = per_trial[static_cast<std::size_t>(t)];
    r.trials = 1;
    r.detected = out.detected;
    r.data_mismatch = out.site == DetectionSite::kDataMismatch;
    r.test_mismatch = out.site == DetectionSite::kTestMismatch;
    r.correct_answers = out.answer.has_value() && *out.answer == f(x);
    const bool matched = out.bob_guess_m == out.choice.m &&
                         out.bob_guess_u == out.choice.u;
    r.guess_matched = matched;
    r.passed_with_guess = matched && !out.detected;
    r.leaked_bits = static_cast<long long>(out.leaked_bits.size());
  });
  ProtocolTally total;
  for (const auto& r : per_trial) total += r;
  return total;
}

double LeakSequenceStats::mean() const noexcept {
  return sequences ? static_cast<double>(total) / static_cast<double>(sequences)
                   : 0.0;
}

double LeakSequenceStats::std_error() const noexcept {
  if (sequences < 2) return 0.0;
  const double n = static_cast<double>(sequences);
  const double m = mean();
  const double var =
      (static_cast<double>(total_squares) - n * m * m) / (n - 1.0);
  return std::sqrt(std::max(0.0, var) / n);
}

LeakSequenceStats simulate_leak_sequences(const RegisterLayout& layout,
                                          const Oracle& f,
                                          const BobStrategy& strategy,
                                          long long sequences,
                                          std::uint64_t seed, Execution exec,
                                          long long max_runs) {
  if (sequences < 0 || max_runs < 1) {
    throw std::invalid_argument("simulate_leak_sequences: bad counts");
  }
  strategy.validate(layout);
  const ProtocolParams params{layout, f, false};
  const std::size_t target = targeted_qubits(strategy, layout);
  std::vector<long long> leaked(static_cast<std::size_t>(sequences), 0);
  std::vector<char> truncated(static_cast<std::size_t>(sequences), 0);
  for_each_index(sequences, exec, [&](long long s) {
    const auto ss = static_cast<std::uint64_t>(s);
    Stream data = derive_stream(seed, {ss, kDataRole});
    Stream alice = derive_stream(seed, {ss, kAliceRole});
    Stream bob = derive_stream(seed, {ss, kBobRole});
    long long count = 0;
    long long runs = 0;
    for (; runs < max_runs; ++runs) {
      const BitString x = random_input(layout.data_qubits(), data);
      const ProtocolOutcome out = run_data_system(x, params, strategy, alice, bob);
      if (out.detected) break;
      if (out.leaked_bits.size() == target) ++count;
    }
    leaked[static_cast<std::size_t>(s)] = count;
    truncated[static_cast<std::size_t>(s)] = runs == max_runs;
  });
  LeakSequenceStats stats;
  stats.sequences = sequences;
  for (std::size_t s = 0; s < leaked.size(); ++s) {
    stats.total += leaked[s];
    stats.total_squares += leaked[s] * leaked[s];
    stats.truncated += truncated[s];
  }
  return stats;
}

std::vector<TrainRecord> quantum_training_reps(const TrainingSet& set,
                                               const QuantumTrainConfig& config,
                                               int reps, std::uint64_t seed,
                                               Execution exec) {
  if (reps < 1) throw std::invalid_argument("quantum_training_reps: reps < 1");
  std::vector<TrainRecord> out(static_cast<std::size_t>(reps));
  for_each_index(reps, exec, [&](long long r) {
    QuantumTrainConfig c = config;
    c.seed = derive_seed(seed, {static_cast<std::uint64_t>(r)});
    out[static_cast<std::size_t>(r)] = train_quantum(set, c).record;
  });
  return out;
}

std::vector<TrainRecord> baseline_training_reps(const TrainingSet& set,
                                                const BaselineMethod& method,
                                                int max_rounds, int reps,
                                                std::uint64_t seed,
                                                Execution exec) {
  if (reps < 1) throw std::invalid_argument("baseline_training_reps: reps < 1");
  std::vector<TrainRecord> out(static_cast<std::size_t>(reps));
  BaselineMethod m = method;
  // Reps already run in parallel; keep the inner reconstruction serial.
  m.reconstruction.execution = Execution::kSerial;
  for_each_index(reps, exec, [&](long long r) {
    out[static_cast<std::size_t>(r)] = train_baseline(
        set, m, max_rounds, derive_seed(seed, {static_cast<std::uint64_t>(r)}));
  });
  return out;
}

std::vector<ReconstructionError> reconstruction_reps(
    const TrainingSet& set, double delta, int cells,
    const ReconstructionOptions& options, int reps, std::uint64_t seed,
    Execution exec) {
  if (reps < 1) throw std::invalid_argument("reconstruction_reps: reps < 1");
  std::vector<ReconstructionError> out(static_cast<std::size_t>(reps));
  ReconstructionOptions o = options;
  o.execution = Execution::kSerial;
  for_each_index(reps, exec, [&](long long r) {
    Stream rng = derive_stream(seed, {static_cast<std::uint64_t>(r), kDistortionRole});
    out[static_cast<std::size_t>(r)] = compare_reconstructions(set, delta, cells, o, rng);
  });
  return out;
}

bool parity_oracle(const BitString& data) { return (data.popcount() & 1) != 0; }

}  // namespace qppp
