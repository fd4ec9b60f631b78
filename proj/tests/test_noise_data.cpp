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
#include <filesystem>
#include <fstream>

#include "qppp/data.hpp"
#include "qppp/noise.hpp"
#include "qppp/perceptron.hpp"

namespace qppp {
namespace {

using Kind = NoiseGenerator::Kind;

TEST(NoiseTest, TinyDeltaRoundsToZero) {
  Stream rng = derive_stream(1, {0});
  const NoiseGenerator g(Kind::kR0, 1.0 / 4096);
  for (int i = 0; i < 10000; ++i) ASSERT_EQ(g.sample(rng), 0.0);
}

TEST(NoiseTest, SamplesLieOnTheGrid) {
  Stream rng = derive_stream(2, {0});
  for (Kind k : {Kind::kR0, Kind::kR1, Kind::kR2, Kind::kR3, Kind::kR4}) {
    const NoiseGenerator g(k, 3.3);
    for (int i = 0; i < 2000; ++i) ASSERT_TRUE(on_grid(g.sample(rng)));
  }
}

TEST(NoiseTest, RoundingIsHalfAwayFromZero) {
  EXPECT_EQ(round_to_grid(0.5 / 1024), 1.0 / 1024);
  EXPECT_EQ(round_to_grid(-0.5 / 1024), -1.0 / 1024);
  EXPECT_EQ(round_to_grid(0.49 / 1024), 0.0);
  EXPECT_EQ(round_to_grid(3.0), 3.0);
}

TEST(NoiseTest, R1SupportSkipsTheMiddle) {
  Stream rng = derive_stream(3, {0});
  const NoiseGenerator g(Kind::kR1, 1.0);
  for (int i = 0; i < 100000; ++i) {
    const double r = std::abs(g.sample(rng));
    ASSERT_TRUE(r == 0.0 || (r >= 0.5 && r <= 1.5)) << r;
  }
}

TEST(NoiseTest, R2Support) {
  Stream rng = derive_stream(4, {0});
  const NoiseGenerator g(Kind::kR2, 1.0);
  for (int i = 0; i < 100000; ++i) {
    const double r = g.sample(rng);
    ASSERT_GE(r, -1.5);
    ASSERT_LE(r, 2.0);
    ASSERT_FALSE(r < 0.0 && r > -0.5);
  }
}

TEST(NoiseTest, R4PositiveBranchIsBounded) {
  Stream rng = derive_stream(5, {0});
  const NoiseGenerator g(Kind::kR4, 2.0);
  for (int i = 0; i < 100000; ++i) ASSERT_LE(g.sample(rng), 1.5934 * 2.0 + 1e-3);
}

TEST(NoiseTest, MeansNearZero) {
  const double delta = 4.0;
  for (Kind k : {Kind::kR0, Kind::kR1, Kind::kR2, Kind::kR3}) {
    Stream rng = derive_stream(6, {static_cast<std::uint64_t>(k)});
    const NoiseGenerator g(k, delta);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) sum += g.sample(rng);
    EXPECT_LT(std::abs(sum / n), 0.02 * delta) << to_string(k);
  }
}

TEST(NoiseTest, R4MeanBiasIsSmall) {
  // Positive half contributes c/4, negative half -1/sqrt(2 pi), in units of delta.
  const double delta = 4.0;
  Stream rng = derive_stream(7, {0});
  const NoiseGenerator g(Kind::kR4, delta);
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) sum += g.sample(rng);
  const double expected = (1.5934 / 4.0 - 1.0 / std::sqrt(2.0 * M_PI)) * delta;
  EXPECT_NEAR(sum / n, expected, 0.01 * delta);
}

TEST(NoiseTest, ParseGenerator) {
  const NoiseGenerator g = parse_generator("R2:delta=0.5");
  EXPECT_EQ(g.kind(), Kind::kR2);
  EXPECT_EQ(g.delta(), 0.5);
  EXPECT_EQ(parse_generator("R0:delta=1/1024").delta(), 1.0 / 1024);
  EXPECT_EQ(parse_generator(g.to_string()).delta(), 0.5);
  EXPECT_THROW(parse_generator("R9:delta=1"), std::invalid_argument);
  EXPECT_THROW(parse_generator("R1:delta=-1"), std::invalid_argument);
  EXPECT_THROW(parse_generator("R1:sigma=1"), std::invalid_argument);
}

TEST(CodecTest, SmallExamples) {
  const FixedPointCodec c(4, 2, 0.0);
  EXPECT_EQ(c.encode(2.5).to_string(), "1010");
  EXPECT_EQ(c.decode(BitString::from_string("0000")), 0.0);
  EXPECT_THROW(c.encode(4.0), std::out_of_range);
  EXPECT_THROW(c.encode(-0.25), std::out_of_range);
}

TEST(CodecTest, RoundTripWithinResolution) {
  const FixedPointCodec c = default_codec();
  Stream rng = derive_stream(8, {0});
  const double bound = std::ldexp(1.0, c.integer_bits() - c.bits());
  for (int i = 0; i < 10000; ++i) {
    const double v = c.min_value() + uniform01(rng) * (c.max_value() - c.min_value());
    ASSERT_LE(std::abs(c.decode(c.encode(v)) - v), bound) << v;
  }
}

TEST(CodecTest, OffsetShiftsRange) {
  const FixedPointCodec c = default_codec();
  EXPECT_EQ(c.min_value(), -8.0);
  EXPECT_TRUE(c.in_range(-8.0));
  EXPECT_FALSE(c.in_range(24.0));
  EXPECT_EQ(c.decode(c.encode(-3.25)), -3.25);
}

TEST(DataTest, Set1IsSeparableAndAlternates) {
  Stream rng = derive_stream(9, {0});
  const TrainingSet s = generate_set1(64, rng);
  EXPECT_EQ(s.size(), 64u);
  EXPECT_EQ(s.count_class(true), 32);
  EXPECT_TRUE(train_classical(s).record.success);
  for (const auto& e : s.examples) {
    const double d = e.x[0] - e.x[1];
    EXPECT_TRUE(e.c ? d >= 0.5 : d <= -0.5);
  }
}

TEST(DataTest, TwoPointsAreSeparable) {
  Stream rng = derive_stream(10, {0});
  for (auto* gen : {&generate_set1}) {
    const TrainingSet s = (*gen)(2, rng, {}, default_codec());
    EXPECT_EQ(s.count_class(true), 1);
    EXPECT_TRUE(train_classical(s).record.success);
  }
}

TEST(DataTest, Set2LabelsFollowTheLine) {
  const Classifier w0{{2.0, -1.0}, -3.0};
  const double a[] = {3.0, 1.0};
  const double b[] = {1.0, 0.0};
  EXPECT_TRUE(classify(w0, a));
  EXPECT_FALSE(classify(w0, b));
  Stream rng = derive_stream(11, {0});
  const TrainingSet s = generate_set2(64, rng);
  for (const auto& e : s.examples) EXPECT_EQ(classify(w0, e.x), e.c);
  EXPECT_TRUE(train_classical(s).record.success);
}

TEST(DataTest, Set3Bands) {
  Stream rng = derive_stream(12, {0});
  const TrainingSet s = generate_set3(256, rng);
  const Classifier sep{{1.0, -1.0}, -1.0};
  for (const auto& e : s.examples) {
    const double d = e.x[0] - e.x[1];
    if (e.c) {
      EXPECT_GE(d, 1.5);
      EXPECT_LE(d, 2.0);
    } else {
      EXPECT_GE(d, 0.0);
      EXPECT_LE(d, 0.5);
    }
    EXPECT_EQ(classify(sep, e.x), e.c);
  }
}

TEST(DataTest, GeneratedValuesFitTheCodec) {
  Stream rng = derive_stream(13, {0});
  for (const auto& s : {generate_set1(512, rng), generate_set2(512, rng),
                        generate_set3(512, rng)}) {
    for (const auto& e : s.examples) {
      for (double v : e.x) {
        ASSERT_TRUE(s.codec.in_range(v));
        ASSERT_TRUE(on_grid(v, s.codec.resolution()));
      }
    }
  }
}

TEST(DataTest, CsvRoundTrip) {
  Stream rng = derive_stream(14, {0});
  const TrainingSet s = generate_set2(32, rng);
  const TrainingSet back = parse_dataset(format_dataset(s));
  EXPECT_EQ(back.examples, s.examples);
  EXPECT_EQ(back.k, 2);
  const auto path = std::filesystem::temp_directory_path() / "qppp_data_test.csv";
  save_dataset(s, path.string());
  EXPECT_EQ(load_dataset(path.string()).examples, s.examples);
  std::filesystem::remove(path);
}

TEST(DataTest, CsvErrors) {
  EXPECT_THROW(parse_dataset(""), std::invalid_argument);
  EXPECT_THROW(parse_dataset("x1,x2,class\n1,2,0,1\n"), std::invalid_argument);
  EXPECT_THROW(parse_dataset("x1,x3,class\n1,2,0\n"), std::invalid_argument);
  EXPECT_THROW(parse_dataset("x1,x2,class\n1,abc,0\n"), std::invalid_argument);
  EXPECT_THROW(parse_dataset("x1,x2,class\n1,2,2\n"), std::invalid_argument);
}

TEST(DataTest, PaddingReachesPowerOfTwo) {
  Stream rng = derive_stream(15, {0});
  TrainingSet s = generate_set1(48, rng);
  const TrainingSet p = pad_to_power_of_two(s, rng);
  EXPECT_EQ(p.size(), 64u);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(p.examples[i], s.examples[i]);
  EXPECT_TRUE(is_power_of_two(64));
  EXPECT_FALSE(is_power_of_two(48));
}

TEST(DataTest, SpecStrings) {
  const DatasetSpec a = parse_dataset_spec("gen1:N=64:seed=7");
  EXPECT_EQ(a.generator, 1);
  EXPECT_EQ(a.n, 64);
  EXPECT_TRUE(a.has_seed);
  EXPECT_EQ(a.seed, 7u);
  const DatasetSpec b = parse_dataset_spec("file:/tmp/x.csv");
  EXPECT_EQ(b.source, DatasetSpec::Source::kFile);
  EXPECT_EQ(b.path, "/tmp/x.csv");
  EXPECT_EQ(parse_dataset_spec("gen3").n, 64);
  EXPECT_THROW(parse_dataset_spec("gen4"), std::invalid_argument);
  EXPECT_THROW(parse_dataset_spec("gen1:N=0"), std::invalid_argument);
  EXPECT_EQ(parse_dataset_spec(a.to_string()).to_string(), a.to_string());
}

TEST(DataTest, MaterializeIsDeterministic) {
  const auto spec = parse_dataset_spec("gen2:N=32");
  EXPECT_EQ(materialize(spec, 5).examples, materialize(spec, 5).examples);
  EXPECT_NE(materialize(spec, 5).examples, materialize(spec, 6).examples);
  const auto seeded = parse_dataset_spec("gen2:N=32:seed=5");
  EXPECT_EQ(materialize(seeded, 1).examples, materialize(seeded, 2).examples);
}

}  // namespace
}  // namespace qppp
