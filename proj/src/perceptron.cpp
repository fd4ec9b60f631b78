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

#include "qppp/perceptron.hpp"

#include <stdexcept>

namespace qppp {

bool classify(const Classifier& c, std::span<const double> x) {
  if (x.size() != c.w.size()) {
    throw std::invalid_argument("classify: dimension " +
                                std::to_string(x.size()) + " != " +
                                std::to_string(c.w.size()));
  }
  double s = c.b;
  for (std::size_t j = 0; j < x.size(); ++j) s += c.w[j] * x[j];
  return s > 0.0;
}

bool classifies_all(const Classifier& c, const TrainingSet& set) {
  for (const auto& e : set.examples) {
    if (classify(c, e.x) != e.c) return false;
  }
  return true;
}

TrainResult train_classical(const TrainingSet& set, int max_rounds) {
  if (set.examples.empty()) {
    throw std::invalid_argument("train_classical: empty training set");
  }
  if (max_rounds < 1) {
    throw std::invalid_argument("train_classical: max_rounds must be >= 1");
  }
  TrainResult out{Classifier::zero(set.k), {}};
  Classifier& c = out.classifier;
  for (int t = 1; t <= max_rounds; ++t) {
    bool updated = false;
    for (const auto& e : set.examples) {
      const bool d = classify(c, e.x);
      if (d == e.c) continue;
      const double step = e.c ? 1.0 : -1.0;
      for (std::size_t j = 0; j < c.w.size(); ++j) c.w[j] += step * e.x[j];
      c.b += step;
      ++out.record.updates;
      updated = true;
    }
    out.record.rounds = t;
    if (!updated) {
      out.record.terminated = true;
      break;
    }
  }
  out.record.success = out.record.terminated && classifies_all(c, set);
  return out;
}

BitString encode_example(const TrainingSet& set, std::span<const double> x) {
  const int n = set.codec.bits();
  BitString bits(n * set.k);
  for (int j = 0; j < set.k; ++j) {
    bits.set_field(j * n, n, set.codec.encode_code(x[static_cast<std::size_t>(j)]));
  }
  return bits;
}

QuantumTrainResult train_quantum(const TrainingSet& set,
                                 const QuantumTrainConfig& config) {
  const std::size_t count = set.examples.size();
  if (!is_power_of_two(count)) {
    throw std::invalid_argument("train_quantum: |D| = " +
                                std::to_string(count) +
                                " is not a power of two");
  }
  if (config.max_rounds < 1) {
    throw std::invalid_argument("train_quantum: max_rounds must be >= 1");
  }
  set.validate();
  const int n = set.codec.bits();
  const int k = set.k;
  const RegisterLayout layout(n, k);
  config.attack.validate(layout);

  std::vector<BitString> encoded;
  encoded.reserve(count);
  for (const auto& e : set.examples) encoded.push_back(encode_example(set, e.x));

  QuantumTrainResult out{Classifier::zero(k), {}, {}};
  out.ledger.leaked_bits.assign(count, 0);
  Classifier& c = out.classifier;

  // Bob evaluates his current classifier on whatever data register he gets.
  std::vector<double> scratch(static_cast<std::size_t>(k));
  const FixedPointCodec& codec = set.codec;
  ProtocolParams params{layout,
                        [&](const BitString& data) {
                          for (int j = 0; j < k; ++j) {
                            scratch[static_cast<std::size_t>(j)] =
                                codec.decode_code(data.field(j * n, n));
                          }
                          return classify(c, scratch);
                        },
                        false};

  Stream alice = derive_stream(config.seed, {kAliceRole});
  Stream bob = derive_stream(config.seed, {kBobRole});
  Stream noise = derive_stream(config.seed, {kNoiseRole});
  Stream perm = derive_stream(config.seed, {kPermutationRole});
  const std::size_t targeted = config.attack.qubits.empty()
                                   ? static_cast<std::size_t>(layout.data_qubits())
                                   : config.attack.qubits.size();
  std::vector<double> noisy(static_cast<std::size_t>(k));

  for (int t = 1; t <= config.max_rounds; ++t) {
    const auto mask = static_cast<std::size_t>(
        uniform_int(perm, 0, static_cast<int>(count) - 1));
    bool updated = false;
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t idx = i ^ mask;
      const Example& ex = set.examples[idx];
      for (int j = 0; j < k; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        noisy[jj] = ex.x[jj] + config.generator.sample(noise);
      }

      // S1: Bob's verdict on the clean example.
      ProtocolOutcome run =
          run_data_system(encoded[idx], params, config.attack, alice, bob);
      ++out.ledger.protocol_runs;
      out.ledger.leaked_bits[idx] += static_cast<int>(run.leaked_bits.size());
      if (run.detected) {
        out.record.detection_events = 1;
        out.record.rounds = t;
        out.record.terminated = false;
        out.record.success = false;
        return out;
      }
      ++out.ledger.undetected_runs;
      if (!config.attack.is_honest() && run.leaked_bits.size() == targeted) {
        ++out.ledger.examples_leaked;
      }
      const bool d = *run.answer;
      if (config.check_answers && config.attack.is_honest() &&
          d != classify(c, ex.x)) {
        throw std::logic_error("train_quantum: protocol answer differs from "
                               "the classifier on an honest run");
      }

      // S2: Alice's noisy update.
      if (d != ex.c) {
        const double step = ex.c ? 1.0 : -1.0;
        for (int j = 0; j < k; ++j) {
          const auto jj = static_cast<std::size_t>(j);
          c.w[jj] += step * noisy[jj];
        }
        c.b += step;
        ++out.record.updates;
        updated = true;
      }
    }
    out.record.rounds = t;
    if (!updated) {
      out.record.terminated = true;
      break;
    }
  }
  out.record.success = out.record.terminated && classifies_all(c, set);
  return out;
}

}  // namespace qppp
