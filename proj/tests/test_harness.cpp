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
#include <set>
#include <sstream>

#include "qppp/harness.hpp"
#include "qppp/kernels.hpp"
#include "qppp/privacy.hpp"
#include "qppp/text.hpp"

namespace qppp {
namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("qppp_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

TEST(KernelTest, TallySerialEqualsParallel) {
  const RegisterLayout layout(4, 2);
  for (const auto& s : {BobStrategy::honest(), BobStrategy::guess_mu(),
                        BobStrategy::measure_subset({1, 5}),
                        BobStrategy::entangle_copy({2, 3}),
                        BobStrategy::measure_and_resend()}) {
    EXPECT_EQ(tally_protocol(layout, parity_oracle, s, 3000, 4, Execution::kSerial),
              tally_protocol(layout, parity_oracle, s, 3000, 4, Execution::kParallel))
        << s.to_string();
  }
}

TEST(KernelTest, LeakSerialEqualsParallel) {
  const RegisterLayout layout(4, 2);
  const auto attack = reduction_attack(layout, 2, AttackScope::kExample);
  EXPECT_EQ(simulate_leak_sequences(layout, parity_oracle, attack, 500, 6, Execution::kSerial),
            simulate_leak_sequences(layout, parity_oracle, attack, 500, 6,
                                    Execution::kParallel));
}

TEST(KernelTest, TrainingRepsSerialEqualsParallel) {
  const TrainingSet s = materialize(parse_dataset_spec("gen2:N=32"), 1);
  QuantumTrainConfig cfg;
  cfg.generator = NoiseGenerator(NoiseGenerator::Kind::kR4, 4.0);
  const auto a = quantum_training_reps(s, cfg, 6, 7, Execution::kSerial);
  const auto b = quantum_training_reps(s, cfg, 6, 7, Execution::kParallel);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].rounds, b[i].rounds);
    EXPECT_EQ(a[i].updates, b[i].updates);
    EXPECT_EQ(a[i].success, b[i].success);
  }
  const BaselineMethod m{BaselineKind::kUniform2DRecon, 1.0};
  const auto c = baseline_training_reps(s, m, 500, 4, 7, Execution::kSerial);
  const auto d = baseline_training_reps(s, m, 500, 4, 7, Execution::kParallel);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c[i].updates, d[i].updates);
}

TEST(KernelTest, ExceptionsEscapeParallelRegions) {
  const TrainingSet odd = materialize(parse_dataset_spec("gen1:N=48"), 1);
  EXPECT_THROW(quantum_training_reps(odd, {}, 4, 1, Execution::kParallel),
               std::invalid_argument);
}

TEST(CsvTest, RowRoundTrip) {
  const ResultRow r{"thm2-sweep", {{"n", "8"}, {"scope", "example"}}, "detection_rate",
                    0.21875, 0.0013, 100000};
  const std::string line = format_row(r);
  EXPECT_EQ(line, "thm2-sweep,n=8;scope=example,detection_rate,0.21875,0.0013,100000");
  EXPECT_EQ(parse_row(line), r);
  EXPECT_EQ(format_row(parse_row(line)), line);
}

TEST(CsvTest, EveryEmittedRowParses) {
  ExperimentSpec s = default_spec(ExperimentKind::kThm2Sweep);
  s.trials = 2000;
  const std::string text = format_rows(run_experiment(s));
  EXPECT_EQ(text.substr(0, kResultHeader.size()), kResultHeader);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
  const auto rows = parse_rows(text);
  EXPECT_EQ(format_rows(rows), text);
}

TEST(CsvTest, RejectsMalformed) {
  EXPECT_THROW(parse_row("a,b,c"), std::invalid_argument);
  EXPECT_THROW(parse_row("a,k,m,1,0,1"), std::invalid_argument);
  EXPECT_THROW(parse_row("a,k=1,m,x,0,1"), std::invalid_argument);
  EXPECT_THROW(parse_row("a,k=1,m,1,-1,1"), std::invalid_argument);
  EXPECT_THROW(parse_rows("wrong,header\n"), std::invalid_argument);
  EXPECT_THROW(parse_rows(""), std::invalid_argument);
  ResultRow bad{"e", {{"k", "a,b"}}, "m", 1.0, 0.0, 1};
  EXPECT_THROW(format_row(bad), std::invalid_argument);
  bad.params.clear();
  bad.value = NAN;
  EXPECT_THROW(format_row(bad), std::invalid_argument);
}

TEST(SpecTest, Grids) {
  EXPECT_EQ(desk_delta_grid().size(), 12u);
  const auto full = full_delta_grid();
  EXPECT_EQ(full.front(), 1.0 / 1024);
  EXPECT_EQ(full.back(), 128.0);
  for (std::size_t i = 1; i < full.size(); ++i) EXPECT_EQ(full[i], 2 * full[i - 1]);
  const auto f3 = default_spec(ExperimentKind::kFig3Rounds, true);
  EXPECT_EQ(f3.deltas, full);
  EXPECT_EQ(f3.reps, 100);
  for (auto k : {ExperimentKind::kProtocolDetection, ExperimentKind::kFig3Rounds,
                 ExperimentKind::kFig4Compare, ExperimentKind::kThm2Sweep,
                 ExperimentKind::kLeakExpectation, ExperimentKind::kReconCompare}) {
    EXPECT_NO_THROW(default_spec(k).validate());
    EXPECT_EQ(parse_experiment_kind(to_string(k)), k);
  }
  ExperimentSpec bad = default_spec(ExperimentKind::kFig3Rounds);
  bad.deltas = {-1.0};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = default_spec(ExperimentKind::kThm2Sweep);
  bad.n2 = {9};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(HarnessTest, Thm2RowsCarryFormulaAndEmpirical) {
  ExperimentSpec s = default_spec(ExperimentKind::kThm2Sweep);
  s.trials = 20000;
  const auto rows = run_experiment(s);
  int checked = 0;
  for (const auto& r : rows) {
    if (r.metric != "detection_rate") continue;
    const double f = detection_probability(8, static_cast<int>(parse_int(r.param("n2"))), 2,
                                           parse_attack_scope(r.param("scope")));
    EXPECT_NEAR(r.value, f, 5 * r.std_error + 1e-9);
    ++checked;
  }
  EXPECT_EQ(checked, 6);
}

TEST(HarnessTest, SameSeedIsByteIdentical) {
  ExperimentSpec s = default_spec(ExperimentKind::kFig3Rounds);
  s.datasets = {"gen2:N=32"};
  s.deltas = {1.0, 8.0};
  s.reps = 4;
  const auto a = format_rows(run_experiment(s));
  s.execution = Execution::kSerial;
  const auto b = format_rows(run_experiment(s));
  EXPECT_EQ(a, b);
  s.seed = 2;
  EXPECT_NE(a, format_rows(run_experiment(s)));
}

TEST(HarnessTest, Fig3SuccessColumnIsOne) {
  ExperimentSpec s = default_spec(ExperimentKind::kFig3Rounds);
  s.datasets = {"gen2:N=64"};
  s.deltas = {1.0 / 1024, 1.0, 8.0};
  s.reps = 5;
  for (const auto& r : run_experiment(s)) {
    if (r.metric == "success_probability") EXPECT_EQ(r.value, 1.0) << format_row(r);
  }
}

TEST(HarnessTest, Fig4HasFiveSeriesPerDataset) {
  ExperimentSpec s = default_spec(ExperimentKind::kFig4Compare);
  s.deltas = {4.0};
  s.reps = 2;
  s.max_rounds = 500;
  std::set<std::pair<std::string, std::string>> series;
  for (const auto& r : run_experiment(s)) series.insert({r.param("dataset"), r.param("method")});
  EXPECT_EQ(series.size(), 15u);
  EXPECT_TRUE(series.contains({"set2", "quantum-R0"}));
  EXPECT_TRUE(series.contains({"set3", "uniform-recon2d"}));
}

TEST(HarnessTest, ReproduceThm2WritesTables) {
  const auto dir = scratch("thm2");
  ReproduceOptions o;
  o.out_dir = dir.string();
  o.trials = 1000;
  const auto paths = reproduce("thm2", o);
  ASSERT_EQ(paths.size(), 2u);
  const std::string table = slurp((dir / "thm2_table.csv").string());
  EXPECT_EQ(table.substr(0, table.find('\n')),
            "n,k,n2,scope,formula,empirical,std_error,abs_diff");
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 7);
  EXPECT_THROW(reproduce("fig9", o), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST(HarnessTest, ReproduceReconDumpsDensities) {
  const auto dir = scratch("recon");
  ReproduceOptions o;
  o.out_dir = dir.string();
  o.reps = 2;
  reproduce("recon", o);
  for (const char* f : {"recon.csv", "recon_table.csv", "recon_density_truth.csv",
                        "recon_density_1d.csv", "recon_density_2d.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  const std::string g = slurp((dir / "recon_density_2d.csv").string());
  EXPECT_EQ(g.substr(0, 10), "cell,mass\n");
  std::filesystem::remove_all(dir);
}

TEST(StatsTest, SpearmanHandValues) {
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {10, 20, 30, 40}), 1.0);
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0);
  // Ranks (1, 2.5, 2.5, 4) vs (1, 2, 3, 4).
  EXPECT_NEAR(spearman({1, 2, 2, 3}, {1, 2, 3, 4}), 4.5 / std::sqrt(4.5 * 5.0), 1e-12);
  EXPECT_TRUE(std::isnan(spearman({1, 1, 1}, {1, 2, 3})));
  EXPECT_THROW(spearman({1}, {1}), std::invalid_argument);
}

TEST(StatsTest, MeanAndError) {
  const auto [m, se] = mean_and_error({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(m, 2.5);
  EXPECT_NEAR(se, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
}

TEST(TextTest, Numbers) {
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(parse_real("1/1024"), 1.0 / 1024);
  EXPECT_THROW(parse_real("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_int("12x"), std::invalid_argument);
  EXPECT_EQ(parse_real(format_exact(0.1)), 0.1);
}

}  // namespace
}  // namespace qppp
