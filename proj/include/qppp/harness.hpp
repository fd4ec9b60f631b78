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

// Experiment grids, result rows and the CSV files they produce.
//
// Cell c, repetition r of an experiment with master seed s draws from
// derive_seed(s, {c, r}); cells are numbered in the nested loop order in
// which run_experiment visits them. Output therefore depends only on the
// spec, never on scheduling.

#ifndef QPPP_HARNESS_HPP_
#define QPPP_HARNESS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qppp/baselines.hpp"
#include "qppp/execution.hpp"
#include "qppp/noise.hpp"

namespace qppp {

enum class ExperimentKind {
  kProtocolDetection,
  kFig3Rounds,
  kFig4Compare,
  kThm2Sweep,
  kLeakExpectation,
  kReconCompare,
};

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kProtocolDetection;
  std::vector<double> deltas;
  std::vector<NoiseGenerator::Kind> generators;
  std::vector<std::string> datasets;  // dataset spec strings
  std::vector<BaselineKind> methods;
  std::string attack = "honest";
  int n = 8;
  int k = 2;
  std::vector<int> n2 = {2, 4, 8};
  int reps = 20;
  long long trials = 100000;
  std::uint64_t seed = 1;
  std::string out_dir = "results";
  int max_rounds = 40000;
  int grid_cells = 20;
  int recon_iterations = 500;
  Execution execution = Execution::kParallel;

  /// Throws std::invalid_argument on an unusable grid.
  void validate() const;
};

/// Desk-scale defaults for each kind; `full` switches to the long grids.
ExperimentSpec default_spec(ExperimentKind kind, bool full = false);

/// 1/1024, 1/256, 1/64, 1/16, 1/4, 1, 4, 8, 16, 32, 64, 128.
std::vector<double> desk_delta_grid();
/// Every power of two from 1/1024 to 128.
std::vector<double> full_delta_grid();

struct ResultRow {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> params;
  std::string metric;
  double value = 0.0;
  double std_error = 0.0;
  long long count = 0;

  /// Value of a parameter, or "" when absent.
  std::string param(std::string_view key) const;
  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

inline constexpr std::string_view kResultHeader =
    "experiment,params,metric,value,std_error,count";

/// One CSV line without the trailing newline. Params are "k=v;k=v".
std::string format_row(const ResultRow& row);
ResultRow parse_row(std::string_view line);
std::string format_rows(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_rows(std::string_view csv);

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

/// Writes `text` to `path`, creating parent directories.
void write_text_file(const std::string& path, std::string_view text);

/// Runs the experiment and writes <out_dir>/<kind>.csv; returns the path.
std::string run_experiment_to_file(const ExperimentSpec& spec);

struct ReproduceOptions {
  std::string out_dir = "results";
  std::uint64_t seed = 1;
  int reps = 0;          // 0 keeps the figure default
  long long trials = 0;  // 0 keeps the figure default
  bool full = false;
  Execution execution = Execution::kParallel;
};

/// Figures: fig3, fig4, thm2, leak, recon. Writes the long-format CSV plus
/// wide per-figure tables; returns the paths written.
std::vector<std::string> reproduce(std::string_view figure,
                                   const ReproduceOptions& options);

/// Spearman rank correlation with average ranks for ties; NaN when either
/// side is constant.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Mean and standard error of a sample.
std::pair<double, double> mean_and_error(const std::vector<double>& v);

}  // namespace qppp

#endif  // QPPP_HARNESS_HPP_
