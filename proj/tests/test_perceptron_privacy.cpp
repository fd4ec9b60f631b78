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


#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "qppp/data.hpp"
#include "qppp/kernels.hpp"
#include "qppp/perceptron.hpp"
#include "qppp/privacy.hpp"

namespace qppp {
namespace {

// Novikoff: updates <= (R / gamma)^2 for a separator (w, b), R and gamma taken
// over the augmented vectors (x, 1).
double novikoff_bound(const TrainingSet& s, const Classifier& sep) {
  double norm = sep.b * sep.b;
  for (double w : sep.w) norm += w * w;
  norm = std::sqrt(norm);
  double r2 = 0.0, gamma = INFINITY;
  for (const auto& e : s.examples) {
    double dot = sep.b, len = 1.0;
    for (std::size_t j = 0; j < e.x.size(); ++j) {
      dot += sep.w[j] * e.x[j];
      len += e.x[j] * e.x[j];
    }
    r2 = std::max(r2, len);
    gamma = std::min(gamma, (e.c ? dot : -dot) / norm);
  }
  return r2 / (gamma * gamma);
}

TEST(ClassifyTest, StrictThreshold) {
  const Classifier c{{2.0, -1.0}, -3.0};
  const std::vector<double> a{3.0, 1.0}, b{1.0, 0.0};
  EXPECT_TRUE(classify(c, a));
  EXPECT_FALSE(classify(c, b));
  EXPECT_FALSE(classify(Classifier::zero(2), a));
  EXPECT_THROW(classify(c, std::vector<double>{1.0}), std::invalid_argument);
}

TEST(ClassicalTest, HandRunOneDimension) {
  TrainingSet s;
  s.k = 1;
  s.examples = {{{0.0}, false}, {{2.0}, true}};
  const auto r = train_classical(s);
  EXPECT_TRUE(r.record.terminated);
  EXPECT_TRUE(r.record.success);
  // Round 1 sets (w, b) = (2, 1); round 2 fixes x = 0 to (2, 0); round 3 is clean.
  EXPECT_EQ(r.classifier.w[0], 2.0);
  EXPECT_EQ(r.classifier.b, 0.0);
  EXPECT_EQ(r.record.rounds, 3);
}

TEST(ClassicalTest, SingleClassZeroTerminatesImmediately) {
  TrainingSet s;
  s.examples = {{{1.0, 2.0}, false}, {{3.0, -1.0}, false}};
  const auto r = train_classical(s);
  EXPECT_EQ(r.record.rounds, 1);
  EXPECT_EQ(r.record.updates, 0);
  EXPECT_EQ(r.classifier, Classifier::zero(2));
}

TEST(ClassicalTest, Set2WithinNovikoffBound) {
  Stream rng = derive_stream(20, {0});
  const TrainingSet s = generate_set2(64, rng);
  const auto r = train_classical(s);
  EXPECT_TRUE(r.record.success);
  EXPECT_LE(r.record.updates, novikoff_bound(s, {{2.0, -1.0}, -3.0}));
}

TEST(ClassicalTest, RoundCapStopsWithoutSuccess) {
  TrainingSet s;
  s.k = 1;
  s.examples = {{{1.0}, true}, {{1.0}, false}};
  const auto r = train_classical(s, 50);
  EXPECT_FALSE(r.record.terminated);
  EXPECT_FALSE(r.record.success);
  EXPECT_EQ(r.record.rounds, 50);
}

TEST(QuantumTrainTest, TinyNoiseSucceedsEveryTime) {
  Stream rng = derive_stream(21, {0});
  const TrainingSet s = generate_set1(64, rng);
  QuantumTrainConfig cfg;
  cfg.generator = NoiseGenerator(NoiseGenerator::Kind::kR0, 1.0 / 1024);
  const auto recs = quantum_training_reps(s, cfg, 20, 3);
  for (const auto& r : recs) EXPECT_TRUE(r.success);
}

TEST(QuantumTrainTest, ZeroNoiseBehavesLikeClassical) {
  Stream rng = derive_stream(22, {0});
  const TrainingSet s = generate_set2(64, rng);
  QuantumTrainConfig cfg;
  cfg.generator = NoiseGenerator(NoiseGenerator::Kind::kR0, 1.0 / 4096);
  const double bound = novikoff_bound(s, {{2.0, -1.0}, -3.0});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    cfg.seed = seed;
    const auto r = train_quantum(s, cfg);
    EXPECT_TRUE(r.record.success);
    EXPECT_LE(r.record.updates, bound);
    EXPECT_TRUE(classifies_all(r.classifier, s));
  }
}

TEST(QuantumTrainTest, SameSeedSameResult) {
  Stream rng = derive_stream(23, {0});
  const TrainingSet s = generate_set3(32, rng);
  QuantumTrainConfig cfg;
  cfg.generator = NoiseGenerator(NoiseGenerator::Kind::kR3, 2.0);
  cfg.seed = 99;
  const auto a = train_quantum(s, cfg);
  const auto b = train_quantum(s, cfg);
  EXPECT_EQ(a.classifier, b.classifier);
  EXPECT_EQ(a.record.updates, b.record.updates);
}

TEST(QuantumTrainTest, RequiresPowerOfTwo) {
  Stream rng = derive_stream(24, {0});
  const TrainingSet s = generate_set1(48, rng);
  EXPECT_THROW(train_quantum(s, {}), std::invalid_argument);
}

TEST(QuantumTrainTest, AttackAbortsAndLeaksGeometrically) {
  // 8-bit attributes so the register matches n = 8, k = 2.
  const FixedPointCodec codec(8, 5, 8.0);
  Stream rng = derive_stream(25, {0});
  const TrainingSet s = generate_set1(64, rng, {}, codec);
  const RegisterLayout layout(8, 2);
  QuantumTrainConfig cfg;
  cfg.generator = NoiseGenerator(NoiseGenerator::Kind::kR0, 1.0);
  cfg.attack = reduction_attack(layout, 8, AttackScope::kExample);
  const int runs = 4000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < runs; ++i) {
    cfg.seed = static_cast<std::uint64_t>(i);
    const auto r = train_quantum(s, cfg);
    ASSERT_EQ(r.record.detection_events, 1);
    ASSERT_FALSE(r.record.success);
    const double v = static_cast<double>(r.ledger.examples_leaked);
    sum += v;
    sq += v * v;
  }
  const double mean = sum / runs;
  const double se = std::sqrt((sq / runs - mean * mean) / runs);
  EXPECT_NEAR(mean, 2.0 * 16 / 15 - 1.0, 4 * se);
}

TEST(PrivacyTest, UniformAmount) {
  EXPECT_NEAR(privacy_amount_uniform(1.0, 95.0), 1.9, 1e-12);
  EXPECT_EQ(privacy_amount_uniform(0.0, 95.0), 0.0);
  EXPECT_NEAR(privacy_amount_uniform(2.0, 95.0) / 2.0, 0.95 * 2.0, 1e-12);
}

TEST(PrivacyTest, DetectionFormulas) {
  EXPECT_DOUBLE_EQ(detection_probability(8, 4, 2, AttackScope::kAttribute), 3.0 / 32);
  EXPECT_DOUBLE_EQ(detection_probability(8, 4, 2, AttackScope::kExample), 7.0 / 32);
  EXPECT_EQ(detection_probability(8, 1, 2, AttackScope::kAttribute), 0.0);
  EXPECT_THROW(detection_probability(8, 9, 2, AttackScope::kAttribute),
               std::invalid_argument);
}

TEST(PrivacyTest, LeakCountSubstitution) {
  EXPECT_NEAR(expected_leak_count(8, 4, 2), 25.0 / 7.0, 1e-12);
  EXPECT_THROW(expected_leak_count(8, 1, 1), std::domain_error);
}

TEST(PrivacyTest, LeakCountIsOneMinusPOverP) {
  // Exact rational check: both forms reduce to the same fraction.
  for (long long n = 1; n <= 16; ++n) {
    for (long long k = 1; k <= 4; ++k) {
      for (long long n2 = 1; n2 <= n; ++n2) {
        if (n2 * k == 1) continue;
        const long long num_a = 2 * n * (n2 * k - 1) + 2 * n - n2 * (n2 * k - 1);
        const long long den_a = n2 * (n2 * k - 1);
        const long long num_b = 2 * n * k - (n2 * k - 1);
        const long long den_b = n2 * k - 1;
        ASSERT_EQ(num_a * den_b, num_b * den_a) << n << "," << k << "," << n2;
        const double p = detection_probability(static_cast<int>(n), static_cast<int>(n2),
                                               static_cast<int>(k), AttackScope::kExample);
        EXPECT_NEAR(expected_leak_count(static_cast<int>(n), static_cast<int>(n2),
                                        static_cast<int>(k)),
                    static_cast<double>(num_b) / static_cast<double>(den_b), 1e-12);
        EXPECT_NEAR((1 - p) / p, static_cast<double>(num_b) / den_b, 1e-9);
      }
    }
  }
}

TEST(PrivacyTest, FullWidthLeakCount) {
  EXPECT_NEAR(expected_leak_count(8, 8, 2), 17.0 / 15.0, 1e-12);
}

TEST(PrivacyTest, GeometricOracle) {
  std::mt19937_64 rng(31);
  std::geometric_distribution<long long> failures_before_detection(7.0 / 32);
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) sum += static_cast<double>(failures_before_detection(rng));
  EXPECT_NEAR(sum / n, expected_leak_count(8, 4, 2), 0.01 * 25.0 / 7.0);
}

TEST(PrivacyTest, LeakSequencesMatchFormula) {
  const RegisterLayout layout(4, 1);
  const auto attack = reduction_attack(layout, 3, AttackScope::kExample);
  const auto st = simulate_leak_sequences(layout, parity_oracle, attack, 20000, 5,
                                          Execution::kSerial);
  EXPECT_EQ(st.truncated, 0);
  EXPECT_NEAR(st.mean(), expected_leak_count(4, 3, 1), 4 * st.std_error());
}

TEST(PrivacyTest, ReductionAttackSets) {
  const RegisterLayout layout(8, 2);
  EXPECT_EQ(reduction_attack(layout, 4, AttackScope::kAttribute).qubits,
            (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(reduction_attack(layout, 4, AttackScope::kAttribute, 1).qubits,
            (std::vector<int>{9, 10, 11}));
  EXPECT_EQ(reduction_attack(layout, 2, AttackScope::kExample).qubits,
            (std::vector<int>{1, 2, 9}));
  EXPECT_EQ(reduction_attack(layout, 8, AttackScope::kExample).qubits.size(), 15u);
  EXPECT_TRUE(reduction_attack(layout, 1, AttackScope::kAttribute).is_honest());
}

TEST(PrivacyTest, PrivacyLevel) {
  EXPECT_EQ(privacy_level(5, 2), 8.0);
  EXPECT_EQ(privacy_level(5, 5), 1.0);
}

}  // namespace
}  // namespace qppp
