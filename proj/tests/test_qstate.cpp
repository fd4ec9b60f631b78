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

#include "qppp/dense.hpp"
#include "qppp/qstate.hpp"
#include "support/trace_support.hpp"

namespace qppp {
namespace {

constexpr double kH = 0.70710678118654752440;

BitString bits(const char* s) { return BitString::from_string(s); }

// Result bit followed by data bits.
BitString reg(bool r, const char* data) {
  return BitString::from_string(std::string(r ? "1" : "0") + data);
}

Amplitude amp_of(const BranchState& s, const BitString& b) {
  for (const auto& br : s.branches()) {
    if (br.bits == b) return br.amplitude;
  }
  return 0.0;
}

TEST(BitStringTest, FromUintIsMsbFirst) {
  EXPECT_EQ(BitString::from_uint(5, 4).to_string(), "0101");
  EXPECT_EQ(bits("0101").field(0, 4), 5u);
}

TEST(BitStringTest, SliceAndWithSlice) {
  const BitString b = bits("110010111");
  EXPECT_EQ(b.slice(2, 4).to_string(), "0010");
  EXPECT_EQ(b.with_slice(1, bits("000")).to_string(), "100010111");
  EXPECT_EQ(b.popcount(), 6);
}

TEST(BitStringTest, WideStringsRoundTrip) {
  std::string s;
  for (int i = 0; i < 200; ++i) s += (i * 7 % 3 == 0) ? '1' : '0';
  EXPECT_EQ(BitString::from_string(s).to_string(), s);
  EXPECT_THROW(BitString::from_string("01x"), std::invalid_argument);
}

TEST(BitStringTest, SetFieldMatchesFromUint) {
  BitString b(20);
  b.set_field(3, 10, 0x2a5);
  EXPECT_EQ(b.slice(3, 10), BitString::from_uint(0x2a5, 10));
  EXPECT_EQ(b.field(3, 10), 0x2a5u);
}

TEST(TestStateTest, ComputationalState) {
  const RegisterLayout layout(4, 1);
  const BranchState s = prepare_test_state(layout, bits("0000"), false, 0);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(amp_of(s, reg(0, "0000")).real(), kH, 1e-15);
  EXPECT_NEAR(amp_of(s, reg(1, "0000")).real(), kH, 1e-15);
}

TEST(TestStateTest, PhaseAndFirstBit) {
  const RegisterLayout layout(4, 1);
  const BranchState s = prepare_test_state(layout, bits("0000"), true, 1);
  EXPECT_NEAR(amp_of(s, reg(0, "0000")).real(), kH, 1e-15);
  EXPECT_NEAR(amp_of(s, reg(1, "1000")).real(), -kH, 1e-15);
}

TEST(TestStateTest, MatchesDenseGateConstruction) {
  for (int n = 1; n <= 4; ++n) {
    for (int k = 1; k <= 2; ++k) {
      const RegisterLayout layout(n, k);
      const int nk = n * k;
      for (std::uint64_t y = 0; y < (1u << nk); ++y) {
        for (int m = 0; m <= nk; ++m) {
          for (bool u : {false, true}) {
            if (m == 0 && u) continue;
            const BitString yb = BitString::from_uint(y, nk);
            const DenseState want = prepare_test_state_dense(layout, yb, u, m);
            const DenseState got = to_dense(prepare_test_state(layout, yb, u, m));
            EXPECT_NEAR(got.norm_squared(), 1.0, 1e-12);
            for (std::size_t i = 0; i < want.amplitudes().size(); ++i) {
              ASSERT_NEAR(std::abs(want.amplitudes()[i] - got.amplitudes()[i]), 0.0,
                          1e-12)
                  << "n=" << n << " k=" << k << " y=" << y << " m=" << m;
            }
          }
        }
      }
    }
  }
}

TEST(TestStateTest, SecondBranchFlipsBitM) {
  const RegisterLayout layout(4, 1);
  const BranchState s = prepare_test_state(layout, bits("0000"), false, 3);
  EXPECT_NEAR(amp_of(s, reg(1, "0010")).real(), kH, 1e-15);
  EXPECT_NEAR(amp_of(s, reg(0, "0000")).real(), kH, 1e-15);
}

TEST(TestStateTest, RejectsBadArguments) {
  const RegisterLayout layout(2, 1);
  EXPECT_THROW(prepare_test_state(layout, bits("000"), false, 1), std::invalid_argument);
  EXPECT_THROW(prepare_test_state(layout, bits("00"), false, 3), std::out_of_range);
  EXPECT_THROW(prepare_test_state(layout, bits("00"), true, 0), std::invalid_argument);
}

TEST(OracleTest, PhaseOnlyWhenFIsOne) {
  const RegisterLayout layout(2, 1);
  const Oracle one = [](const BitString&) { return true; };
  const Oracle zero = [](const BitString&) { return false; };
  const BranchState plus = prepare_test_state(layout, bits("10"), false, 0);
  const BranchState minus = apply_uf(plus, one);
  EXPECT_NEAR(amp_of(minus, reg(1, "10")).real(), -kH, 1e-15);
  EXPECT_NEAR(amp_of(minus, reg(0, "10")).real(), kH, 1e-15);
  EXPECT_TRUE(apply_uf(plus, zero).approx_equal(plus));
}

TEST(OracleTest, RelativePhaseOnTestStateMatchesDense) {
  const RegisterLayout layout(3, 1);
  const Oracle f = [](const BitString& d) { return d[1]; };
  const BranchState s = prepare_test_state(layout, bits("000"), false, 2);
  const BranchState out = apply_uf(s, f);
  EXPECT_NEAR(amp_of(out, reg(1, "010")).real(), -kH, 1e-15);
  DenseState d = to_dense(s);
  apply_uf(d, f);
  const DenseState got = to_dense(out);
  for (std::size_t i = 0; i < d.amplitudes().size(); ++i) {
    EXPECT_NEAR(std::abs(d.amplitudes()[i] - got.amplitudes()[i]), 0.0, 1e-15);
  }
}

TEST(GateTest, ZTwiceIsIdentity) {
  const RegisterLayout layout(2, 1);
  const BranchState s = prepare_test_state(layout, bits("01"), true, 2);
  EXPECT_TRUE(apply_gate(apply_gate(s, Gate::z(0)), Gate::z(0)).approx_equal(s));
}

TEST(GateTest, CnotTruthTable) {
  const RegisterLayout layout(2, 1);
  const BranchState s = prepare_test_state(layout, bits("00"), false, 0);
  const BranchState out = apply_gate(s, Gate::cnot(0, 1));
  EXPECT_NEAR(amp_of(out, reg(0, "00")).real(), kH, 1e-15);
  EXPECT_NEAR(amp_of(out, reg(1, "10")).real(), kH, 1e-15);
}

TEST(GateTest, UncomputeAfterHonestOracleGivesPlusOrMinus) {
  const RegisterLayout layout(3, 2);
  Stream rng = derive_stream(11, {1});
  for (int trial = 0; trial < 200; ++trial) {
    BitString y(6);
    for (int i = 0; i < 6; ++i) y.set(i, fair_coin(rng));
    const int m = uniform_int(rng, 0, 6);
    const bool u = m > 0 && fair_coin(rng);
    const std::uint64_t salt = rng();
    const Oracle f = [salt](const BitString& d) { return (mix64(d.hash() ^ salt) & 1) != 0; };
    BranchState s = apply_uf(prepare_test_state(layout, y, u, m), f);
    for (const Gate& g : alice_uncompute_gates(u, m)) s = apply_gate(s, g);
    ASSERT_EQ(s.distinct_data_patterns(), 1);
    EXPECT_EQ(data_register(s.branches().front().bits, layout), y);
    const auto [pp, pm] = pm_probabilities(s);
    EXPECT_NEAR(pp + pm, 1.0, 1e-12);
    EXPECT_TRUE(std::abs(pp - 1.0) < 1e-12 || std::abs(pm - 1.0) < 1e-12);
  }
}

TEST(GateTest, MZeroHasNoUncompute) {
  EXPECT_TRUE(alice_uncompute_gates(false, 0).empty());
}

TEST(MeasureTest, ComputationalStateDataIsCertain) {
  const RegisterLayout layout(3, 1);
  Stream rng = derive_stream(2, {0});
  const BranchState s = prepare_test_state(layout, bits("101"), false, 0);
  const std::vector<int> q{1, 2, 3};
  for (int i = 0; i < 20; ++i) {
    const Measurement m = measure_computational(s, q, rng);
    EXPECT_EQ(m.outcome.to_string(), "101");
    EXPECT_NEAR(m.probability, 1.0, 1e-12);
  }
}

TEST(MeasureTest, FirstBitOfTestStateIsFiftyFifty) {
  const RegisterLayout layout(4, 1);
  const BranchState s = prepare_test_state(layout, bits("0110"), false, 1);
  const std::vector<int> q{1};
  const auto dist = outcome_distribution(s, q);
  ASSERT_EQ(dist.size(), 2u);
  EXPECT_NEAR(dist[0].second, 0.5, 1e-12);
  EXPECT_NEAR(dist[1].second, 0.5, 1e-12);
}

TEST(MeasureTest, SubsetFrequenciesMatchDenseBornRule) {
  const RegisterLayout layout(3, 2);
  BranchState s = prepare_test_state(layout, bits("011010"), true, 4).with_ancillas(1);
  s = apply_gate(s, Gate::cnot(4, 7));
  const std::vector<int> q{1, 4, 7};
  const auto dense = outcome_distribution(to_dense(s), q);
  std::map<std::string, long long> counts;
  Stream rng = derive_stream(5, {3});
  const long long samples = 100000;
  for (long long i = 0; i < samples; ++i) {
    ++counts[measure_computational(s, q, rng).outcome.to_string()];
  }
  for (const auto& [outcome, p] : dense) {
    const double sigma = std::sqrt(p * (1 - p) / samples);
    const double freq = static_cast<double>(counts[outcome.to_string()]) / samples;
    EXPECT_LE(std::abs(freq - p), 3 * sigma + 1e-12) << outcome.to_string();
  }
}

TEST(PmTest, PlusAndMinusAreCertain) {
  const RegisterLayout layout(2, 1);
  const BranchState plus = prepare_test_state(layout, bits("01"), false, 0);
  EXPECT_NEAR(pm_probabilities(plus).first, 1.0, 1e-12);
  const BranchState minus = apply_gate(plus, Gate::z(0));
  EXPECT_NEAR(pm_probabilities(minus).second, 1.0, 1e-12);
  Stream rng = derive_stream(1, {0});
  const PmMeasurement m = measure_result_pm(minus, rng);
  EXPECT_EQ(m.outcome, PmOutcome::kMinus);
  for (const auto& br : m.state.branches()) EXPECT_FALSE(br.bits[0]);
}

TEST(PmTest, EntangledCopyIsFiftyFifty) {
  const RegisterLayout layout(2, 1);
  BranchState s = prepare_test_state(layout, bits("00"), false, 1).with_ancillas(2);
  s = apply_gate(s, Gate::cnot(1, 3));
  s = apply_gate(s, Gate::cnot(2, 4));
  s = apply_gate(s, Gate::cnot(0, 1));
  const auto [pp, pm] = pm_probabilities(s);
  EXPECT_NEAR(pp, 0.5, 1e-12);
  EXPECT_NEAR(pm, 0.5, 1e-12);
}

TEST(DenseTest, TwoBranchStateHasTwoEntries) {
  const RegisterLayout layout(3, 1);
  const DenseState d = to_dense(prepare_test_state(layout, bits("110"), true, 2));
  EXPECT_EQ(d.nonzero_count(), 2);
  EXPECT_NEAR(d.norm_squared(), 1.0, 1e-12);
}

TEST(DenseTest, RejectsOversizedRegisters) {
  EXPECT_THROW(DenseState(RegisterLayout(5, 3)), std::length_error);
}

TEST(DenseTest, RandomTracesAgreeWithBranchSimulator) {
  Stream rng = derive_stream(77, {0});
  int failures = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto trace = testing::random_trace(rng, 4, 3, 14);
    const auto exact = trace_distribution_dense(to_dense(trace.initial), trace.trace);
    std::map<TraceRecord, long long> seen;
    const long long samples = 400;
    for (long long s = 0; s < samples; ++s) {
      ++seen[run_trace(trace.initial, trace.trace, rng).record];
    }
    // 3-sigma per outcome, union over every outcome of every trace.
    for (const auto& [rec, c] : seen) ASSERT_TRUE(exact.contains(rec)) << rec;
    for (const auto& [rec, p] : exact) {
      const double sigma = std::sqrt(p * (1 - p) / samples);
      const double f = static_cast<double>(seen[rec]) / samples;
      failures += std::abs(f - p) > 3 * sigma + 1e-12;
    }
  }
  // 3-sigma excursions happen at ~0.3% per outcome.
  EXPECT_LT(failures, 40);
}

}  // namespace
}  // namespace qppp
