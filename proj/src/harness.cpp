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

#include "qppp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "qppp/data.hpp"
#include "qppp/kernels.hpp"
#include "qppp/privacy.hpp"
#include "qppp/text.hpp"

namespace qppp {

namespace {

constexpr std::uint64_t kPaddingTag = 0x9adu;

using Params = std::vector<std::pair<std::string, std::string>>;

struct Sink {
  std::string experiment;
  std::vector<ResultRow> rows;

  void add(const Params& params, std::string metric, double value,
           double std_error, long long count) {
    rows.push_back({experiment, params, std::move(metric), value, std_error,
                    count});
  }
};

std::string dataset_label(std::size_t index) {
  return "set" + std::to_string(index + 1);
}

TrainingSet load_for_training(const std::string& spec, std::uint64_t seed,
                              std::size_t index) {
  TrainingSet set = materialize(parse_dataset_spec(spec), seed);
  Stream pad = derive_stream(seed, {kPaddingTag, static_cast<std::uint64_t>(index)});
  return pad_to_power_of_two(std::move(set), pad);
}

void add_training_rows(Sink& sink, const Params& p,
                       const std::vector<TrainRecord>& recs) {
  std::vector<double> rounds;
  std::vector<double> updates;
  long long terminated = 0;
  long long success = 0;
  long long detections = 0;
  for (const auto& r : recs) {
    rounds.push_back(r.rounds);
    updates.push_back(static_cast<double>(r.updates));
    terminated += r.terminated;
    success += r.success;
    detections += r.detection_events;
  }
  const auto n = static_cast<long long>(recs.size());
  const auto [mr, er] = mean_and_error(rounds);
  const auto [mu, eu] = mean_and_error(updates);
  const double pt = static_cast<double>(terminated) / static_cast<double>(n);
  const double ps = static_cast<double>(success) / static_cast<double>(n);
  const double pd = static_cast<double>(detections) / static_cast<double>(n);
  sink.add(p, "avg_rounds", mr, er, n);
  sink.add(p, "avg_updates", mu, eu, n);
  sink.add(p, "terminating_probability", pt, binomial_std_error(pt, n), n);
  sink.add(p, "success_probability", ps, binomial_std_error(ps, n), n);
  sink.add(p, "detection_probability", pd, binomial_std_error(pd, n), n);
}

void add_tally_rows(Sink& sink, const Params& p, const ProtocolTally& t) {
  const long long n = t.trials;
  auto rate_row = [&](const char* metric, long long count) {
    const double r = t.rate(count);
    sink.add(p, metric, r, binomial_std_error(r, n), n);
  };
  rate_row("detection_rate", t.detected);
  rate_row("data_mismatch_rate", t.data_mismatch);
  rate_row("test_mismatch_rate", t.test_mismatch);
  rate_row("pass_rate", t.trials - t.detected);
  rate_row("correct_answer_rate", t.correct_answers);
  rate_row("guess_pass_rate", t.passed_with_guess);
  sink.add(p, "leaked_bits_per_run", t.rate(t.leaked_bits), 0.0, n);
}

void run_protocol_detection(const ExperimentSpec& s, Sink& sink) {
  const RegisterLayout layout(s.n, s.k);
  const BobStrategy strategy = parse_strategy(s.attack, layout);
  const ProtocolTally t = tally_protocol(layout, parity_oracle, strategy,
                                         s.trials, derive_seed(s.seed, {0}),
                                         s.execution);
  add_tally_rows(sink,
                 {{"n", std::to_string(s.n)},
                  {"k", std::to_string(s.k)},
                  {"attack", strategy.to_string()}},
                 t);
}

void run_thm2(const ExperimentSpec& s, Sink& sink) {
  const RegisterLayout layout(s.n, s.k);
  std::uint64_t cell = 0;
  for (int n2 : s.n2) {
    for (AttackScope scope : {AttackScope::kAttribute, AttackScope::kExample}) {
      const BobStrategy attack = reduction_attack(layout, n2, scope);
      const ProtocolTally t =
          tally_protocol(layout, parity_oracle, attack, s.trials,
                         derive_seed(s.seed, {cell++}), s.execution);
      const Params p{{"n", std::to_string(s.n)},
                     {"k", std::to_string(s.k)},
                     {"n2", std::to_string(n2)},
                     {"scope", std::string(to_string(scope))}};
      const double r = t.detection_rate();
      sink.add(p, "detection_rate", r, binomial_std_error(r, t.trials), t.trials);
      sink.add(p, "detection_formula",
               detection_probability(s.n, n2, s.k, scope), 0.0, 0);
    }
  }
}

void run_leak(const ExperimentSpec& s, Sink& sink) {
  const RegisterLayout layout(s.n, s.k);
  std::uint64_t cell = 0;
  for (int n2 : s.n2) {
    const BobStrategy attack = reduction_attack(layout, n2, AttackScope::kExample);
    const std::uint64_t seed = derive_seed(s.seed, {cell++});
    if (attack.is_honest()) continue;
    const LeakSequenceStats st = simulate_leak_sequences(
        layout, parity_oracle, attack, s.trials, seed, s.execution);
    const Params p{{"n", std::to_string(s.n)},
                   {"k", std::to_string(s.k)},
                   {"n2", std::to_string(n2)}};
    sink.add(p, "leaked_examples", st.mean(), st.std_error(), st.sequences);
    sink.add(p, "leaked_examples_formula", expected_leak_count(s.n, n2, s.k),
             0.0, 0);
  }
}

void run_fig3(const ExperimentSpec& s, Sink& sink) {
  std::uint64_t cell = 0;
  for (std::size_t d = 0; d < s.datasets.size(); ++d) {
    const TrainingSet set = load_for_training(s.datasets[d], s.seed, d);
    const RegisterLayout layout(set.codec.bits(), set.k);
    for (auto g : s.generators) {
      for (double delta : s.deltas) {
        QuantumTrainConfig cfg{NoiseGenerator(g, delta), s.max_rounds,
                               parse_strategy(s.attack, layout), 0, true};
        const auto recs = quantum_training_reps(
            set, cfg, s.reps, derive_seed(s.seed, {cell++}), s.execution);
        add_training_rows(sink,
                          {{"dataset", dataset_label(d)},
                           {"generator", std::string(to_string(g))},
                           {"delta", format_number(delta)},
                           {"attack", cfg.attack.to_string()}},
                          recs);
      }
    }
  }
}

void run_fig4(const ExperimentSpec& s, Sink& sink) {
  std::uint64_t cell = 0;
  const auto gen = s.generators.empty() ? NoiseGenerator::Kind::kR0
                                        : s.generators.front();
  for (std::size_t d = 0; d < s.datasets.size(); ++d) {
    const TrainingSet set = load_for_training(s.datasets[d], s.seed, d);
    for (double delta : s.deltas) {
      QuantumTrainConfig cfg{NoiseGenerator(gen, delta), s.max_rounds,
                             BobStrategy::honest(), 0, true};
      add_training_rows(
          sink,
          {{"dataset", dataset_label(d)},
           {"delta", format_number(delta)},
           {"method", "quantum-" + std::string(to_string(gen))}},
          quantum_training_reps(set, cfg, s.reps, derive_seed(s.seed, {cell++}),
                                s.execution));
      for (auto kind : s.methods) {
        BaselineMethod m{kind, delta, s.grid_cells,
                         {s.recon_iterations, 1e-4, Execution::kSerial}};
        add_training_rows(
            sink,
            {{"dataset", dataset_label(d)},
             {"delta", format_number(delta)},
             {"method", std::string(to_string(kind))}},
            baseline_training_reps(set, m, s.max_rounds, s.reps,
                                   derive_seed(s.seed, {cell++}), s.execution));
      }
    }
  }
}

void run_recon(const ExperimentSpec& s, Sink& sink) {
  std::uint64_t cell = 0;
  for (std::size_t d = 0; d < s.datasets.size(); ++d) {
    const TrainingSet set = materialize(parse_dataset_spec(s.datasets[d]), s.seed);
    for (double delta : s.deltas) {
      const auto errs = reconstruction_reps(
          set, delta, s.grid_cells, {s.recon_iterations, 1e-4, s.execution},
          s.reps, derive_seed(s.seed, {cell++}), s.execution);
      std::vector<double> e1;
      std::vector<double> e2;
      long long wins = 0;
      for (const auto& e : errs) {
        e1.push_back(e.l1_1d);
        e2.push_back(e.l1_2d);
        wins += e.l1_2d < e.l1_1d;
      }
      const Params p{{"dataset", dataset_label(d)},
                     {"delta", format_number(delta)},
                     {"cells", std::to_string(s.grid_cells)}};
      const auto [m1, se1] = mean_and_error(e1);
      const auto [m2, se2] = mean_and_error(e2);
      const auto n = static_cast<long long>(errs.size());
      const double pw = static_cast<double>(wins) / static_cast<double>(n);
      sink.add(p, "l1_error_1d", m1, se1, n);
      sink.add(p, "l1_error_2d", m2, se2, n);
      sink.add(p, "wins_2d", pw, binomial_std_error(pw, n), n);
    }
  }
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out += (i ? "," : "") + header[i];
  }
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
    out += "\n";
  }
  return out;
}

// value of (metric) for rows matching all of `match`; "" when missing.
std::string lookup(const std::vector<ResultRow>& rows, const Params& match,
                   std::string_view metric) {
  for (const auto& r : rows) {
    if (r.metric != metric) continue;
    bool ok = true;
    for (const auto& [k, v] : match) ok = ok && r.param(k) == v;
    if (ok) return format_number(r.value);
  }
  return "";
}

std::string lookup_error(const std::vector<ResultRow>& rows,
                         const Params& match, std::string_view metric) {
  for (const auto& r : rows) {
    if (r.metric != metric) continue;
    bool ok = true;
    for (const auto& [k, v] : match) ok = ok && r.param(k) == v;
    if (ok) return format_number(r.std_error);
  }
  return "";
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kProtocolDetection:
      return "protocol-detection";
    case ExperimentKind::kFig3Rounds:
      return "fig3-rounds";
    case ExperimentKind::kFig4Compare:
      return "fig4-compare";
    case ExperimentKind::kThm2Sweep:
      return "thm2-sweep";
    case ExperimentKind::kLeakExpectation:
      return "leak-expectation";
    case ExperimentKind::kReconCompare:
      return "recon-compare";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  for (auto k : {ExperimentKind::kProtocolDetection, ExperimentKind::kFig3Rounds,
                 ExperimentKind::kFig4Compare, ExperimentKind::kThm2Sweep,
                 ExperimentKind::kLeakExpectation,
                 ExperimentKind::kReconCompare}) {
    if (text == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown experiment '" + std::string(text) + "'");
}

void ExperimentSpec::validate() const {
  if (reps < 1) throw std::invalid_argument("experiment: reps must be >= 1");
  if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (max_rounds < 1) throw std::invalid_argument("experiment: max_rounds must be >= 1");
  if (grid_cells < 2) throw std::invalid_argument("experiment: grid_cells must be >= 2");
  if (recon_iterations < 1) {
    throw std::invalid_argument("experiment: recon_iterations must be >= 1");
  }
  (void)RegisterLayout(n, k);
  const bool uses_n2 = kind == ExperimentKind::kThm2Sweep ||
                       kind == ExperimentKind::kLeakExpectation;
  for (int v : n2) {
    if (uses_n2 && (v < 1 || v > n)) {
      throw std::invalid_argument("experiment: n2 outside 1..n");
    }
  }
  for (double d : deltas) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw std::invalid_argument("experiment: deltas must be positive");
    }
  }
  for (const auto& d : datasets) {
    if (d.find(',') != std::string::npos) {
      throw std::invalid_argument("experiment: dataset specs may not contain ','");
    }
    (void)parse_dataset_spec(d);
  }
  const bool training = kind == ExperimentKind::kFig3Rounds ||
                        kind == ExperimentKind::kFig4Compare ||
                        kind == ExperimentKind::kReconCompare;
  if (training && (datasets.empty() || deltas.empty())) {
    throw std::invalid_argument("experiment: " + std::string(to_string(kind)) +
                                " needs datasets and deltas");
  }
  if (kind == ExperimentKind::kFig3Rounds && generators.empty()) {
    throw std::invalid_argument("experiment: fig3-rounds needs generators");
  }
  if (uses_n2 && n2.empty()) {
    throw std::invalid_argument("experiment: n2 list is empty");
  }
}

std::vector<double> desk_delta_grid() {
  return {1.0 / 1024, 1.0 / 256, 1.0 / 64, 1.0 / 16, 0.25, 1.0,
          4.0,        8.0,       16.0,     32.0,      64.0, 128.0};
}

std::vector<double> full_delta_grid() {
  std::vector<double> g;
  for (int e = -10; e <= 7; ++e) g.push_back(std::ldexp(1.0, e));
  return g;
}

ExperimentSpec default_spec(ExperimentKind kind, bool full) {
  ExperimentSpec s;
  s.kind = kind;
  const std::vector<std::string> sets = {"gen1:N=64", "gen2:N=64", "gen3:N=64"};
  switch (kind) {
    case ExperimentKind::kProtocolDetection:
      s.n = 4;
      s.k = 1;
      s.attack = "measure:all";
      break;
    case ExperimentKind::kFig3Rounds:
      s.datasets = sets;
      s.generators = {NoiseGenerator::Kind::kR0, NoiseGenerator::Kind::kR1,
                      NoiseGenerator::Kind::kR2, NoiseGenerator::Kind::kR3,
                      NoiseGenerator::Kind::kR4};
      s.deltas = full ? full_delta_grid() : desk_delta_grid();
      break;
    case ExperimentKind::kFig4Compare:
      s.datasets = sets;
      s.generators = {NoiseGenerator::Kind::kR0};
      s.methods = {kAllBaselines.begin(), kAllBaselines.end()};
      s.deltas = full ? full_delta_grid() : desk_delta_grid();
      break;
    case ExperimentKind::kThm2Sweep:
      s.n2 = {2, 4, 8};
      break;
    case ExperimentKind::kLeakExpectation:
      s.n2 = {4};
      s.trials = 10000;
      break;
    case ExperimentKind::kReconCompare:
      s.datasets = {"gen3:N=1024"};
      s.deltas = {1.0};
      break;
  }
  if (full) {
    s.reps = 100;
    if (kind == ExperimentKind::kThm2Sweep ||
        kind == ExperimentKind::kProtocolDetection) {
      s.trials = 1000000;
    }
  }
  return s;
}

std::string ResultRow::param(std::string_view key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  return "";
}

std::string format_row(const ResultRow& row) {
  if (!std::isfinite(row.value) || !(row.std_error >= 0.0)) {
    throw std::invalid_argument("format_row: value must be finite and "
                                "std_error >= 0 (" + row.metric + ")");
  }
  std::string params;
  for (const auto& [k, v] : row.params) {
    if (k.find_first_of(",;=\n") != std::string::npos ||
        v.find_first_of(",;\n") != std::string::npos) {
      throw std::invalid_argument("format_row: illegal character in param " + k);
    }
    if (!params.empty()) params += ';';
    params += k + "=" + v;
  }
  return row.experiment + "," + params + "," + row.metric + "," +
         format_number(row.value) + "," + format_number(row.std_error) + "," +
         std::to_string(row.count);
}

ResultRow parse_row(std::string_view line) {
  const auto cells = split(line, ',');
  if (cells.size() != 6) {
    throw std::invalid_argument("result row needs 6 fields: '" +
                                std::string(line) + "'");
  }
  ResultRow r;
  r.experiment = std::string(cells[0]);
  if (!cells[1].empty()) {
    for (auto kv : split(cells[1], ';')) {
      const auto eq = kv.find('=');
      if (eq == std::string_view::npos) {
        throw std::invalid_argument("bad param '" + std::string(kv) + "'");
      }
      r.params.emplace_back(std::string(kv.substr(0, eq)),
                            std::string(kv.substr(eq + 1)));
    }
  }
  r.metric = std::string(cells[2]);
  r.value = parse_real(cells[3]);
  r.std_error = parse_real(cells[4]);
  r.count = parse_int(cells[5]);
  if (r.std_error < 0.0) throw std::invalid_argument("negative std_error");
  return r;
}

std::string format_rows(const std::vector<ResultRow>& rows) {
  std::string out(kResultHeader);
  out += "\n";
  for (const auto& r : rows) out += format_row(r) + "\n";
  return out;
}

std::vector<ResultRow> parse_rows(std::string_view csv) {
  std::vector<ResultRow> rows;
  bool header = true;
  for (auto line : split(csv, '\n')) {
    if (line.empty()) continue;
    if (header) {
      if (line != kResultHeader) {
        throw std::invalid_argument("unexpected result header");
      }
      header = false;
      continue;
    }
    rows.push_back(parse_row(line));
  }
  if (header) throw std::invalid_argument("empty result file");
  return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  Sink sink{std::string(to_string(spec.kind)), {}};
  switch (spec.kind) {
    case ExperimentKind::kProtocolDetection:
      run_protocol_detection(spec, sink);
      break;
    case ExperimentKind::kFig3Rounds:
      run_fig3(spec, sink);
      break;
    case ExperimentKind::kFig4Compare:
      run_fig4(spec, sink);
      break;
    case ExperimentKind::kThm2Sweep:
      run_thm2(spec, sink);
      break;
    case ExperimentKind::kLeakExpectation:
      run_leak(spec, sink);
      break;
    case ExperimentKind::kReconCompare:
      run_recon(spec, sink);
      break;
  }
  return sink.rows;
}

void write_text_file(const std::string& path, std::string_view text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw std::runtime_error("write failed for " + path);
}

std::string run_experiment_to_file(const ExperimentSpec& spec) {
  const auto rows = run_experiment(spec);
  const std::string path =
      (std::filesystem::path(spec.out_dir) / (std::string(to_string(spec.kind)) + ".csv"))
          .string();
  write_text_file(path, format_rows(rows));
  return path;
}

std::vector<std::string> reproduce(std::string_view figure,
                                   const ReproduceOptions& o) {
  const std::filesystem::path dir(o.out_dir);
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& text) {
    const std::string path = (dir / name).string();
    write_text_file(path, text);
    written.push_back(path);
  };
  auto configure = [&](ExperimentKind kind) {
    ExperimentSpec s = default_spec(kind, o.full);
    s.seed = o.seed;
    s.out_dir = o.out_dir;
    s.execution = o.execution;
    if (o.reps > 0) s.reps = o.reps;
    if (o.trials > 0) s.trials = o.trials;
    return s;
  };

  if (figure == "fig3") {
    const ExperimentSpec s = configure(ExperimentKind::kFig3Rounds);
    const auto rows = run_experiment(s);
    emit("fig3.csv", format_rows(rows));
    for (std::size_t d = 0; d < s.datasets.size(); ++d) {
      std::vector<std::string> header{"delta"};
      for (auto g : s.generators) header.emplace_back(to_string(g));
      std::vector<std::vector<std::string>> table;
      for (double delta : s.deltas) {
        std::vector<std::string> line{format_number(delta)};
        for (auto g : s.generators) {
          line.push_back(lookup(rows,
                                {{"dataset", dataset_label(d)},
                                 {"generator", std::string(to_string(g))},
                                 {"delta", format_number(delta)}},
                                "avg_rounds"));
        }
        table.push_back(std::move(line));
      }
      emit("fig3_" + dataset_label(d) + ".csv", csv_table(header, table));
    }
  } else if (figure == "fig4") {
    const ExperimentSpec s = configure(ExperimentKind::kFig4Compare);
    const auto rows = run_experiment(s);
    emit("fig4.csv", format_rows(rows));
    std::vector<std::string> series{"quantum-" +
                                    std::string(to_string(s.generators.front()))};
    for (auto m : s.methods) series.emplace_back(to_string(m));
    for (std::size_t d = 0; d < s.datasets.size(); ++d) {
      for (const char* metric : {"terminating_probability", "success_probability"}) {
        std::vector<std::string> header{"delta"};
        header.insert(header.end(), series.begin(), series.end());
        std::vector<std::vector<std::string>> table;
        for (double delta : s.deltas) {
          std::vector<std::string> line{format_number(delta)};
          for (const auto& m : series) {
            line.push_back(lookup(rows,
                                  {{"dataset", dataset_label(d)},
                                   {"delta", format_number(delta)},
                                   {"method", m}},
                                  metric));
          }
          table.push_back(std::move(line));
        }
        const std::string tag = std::string(metric) == "success_probability"
                                    ? "success"
                                    : "terminating";
        emit("fig4_" + dataset_label(d) + "_" + tag + ".csv",
             csv_table(header, table));
      }
    }
  } else if (figure == "thm2") {
    const ExperimentSpec s = configure(ExperimentKind::kThm2Sweep);
    const auto rows = run_experiment(s);
    emit("thm2.csv", format_rows(rows));
    std::vector<std::vector<std::string>> table;
    for (int n2 : s.n2) {
      for (AttackScope scope : {AttackScope::kAttribute, AttackScope::kExample}) {
        const Params key{{"n2", std::to_string(n2)},
                         {"scope", std::string(to_string(scope))}};
        const double f = detection_probability(s.n, n2, s.k, scope);
        const double e = parse_real(lookup(rows, key, "detection_rate"));
        table.push_back({std::to_string(s.n), std::to_string(s.k),
                         std::to_string(n2), std::string(to_string(scope)),
                         format_number(f), format_number(e),
                         lookup_error(rows, key, "detection_rate"),
                         format_number(std::abs(e - f))});
      }
    }
    emit("thm2_table.csv",
         csv_table({"n", "k", "n2", "scope", "formula", "empirical",
                    "std_error", "abs_diff"},
                   table));
  } else if (figure == "leak") {
    const ExperimentSpec s = configure(ExperimentKind::kLeakExpectation);
    const auto rows = run_experiment(s);
    emit("leak.csv", format_rows(rows));
    std::vector<std::vector<std::string>> table;
    for (int n2 : s.n2) {
      const Params key{{"n2", std::to_string(n2)}};
      const std::string e = lookup(rows, key, "leaked_examples");
      if (e.empty()) continue;
      const double f = expected_leak_count(s.n, n2, s.k);
      table.push_back({std::to_string(s.n), std::to_string(s.k),
                       std::to_string(n2), format_number(f), e,
                       lookup_error(rows, key, "leaked_examples"),
                       format_number(std::abs(parse_real(e) - f) / f)});
    }
    emit("leak_table.csv",
         csv_table({"n", "k", "n2", "formula", "empirical", "std_error",
                    "relative_diff"},
                   table));
  } else if (figure == "recon") {
    const ExperimentSpec s = configure(ExperimentKind::kReconCompare);
    const auto rows = run_experiment(s);
    emit("recon.csv", format_rows(rows));
    std::vector<std::vector<std::string>> table;
    for (double delta : s.deltas) {
      const Params key{{"dataset", dataset_label(0)},
                       {"delta", format_number(delta)}};
      table.push_back({format_number(delta), lookup(rows, key, "l1_error_1d"),
                       lookup(rows, key, "l1_error_2d"),
                       lookup(rows, key, "wins_2d")});
    }
    emit("recon_table.csv",
         csv_table({"delta", "l1_error_1d", "l1_error_2d", "wins_2d"}, table));

    // One class-0 draw, dumped for a scatter of truth vs both estimates.
    const TrainingSet set = materialize(parse_dataset_spec(s.datasets.front()), s.seed);
    const double delta = s.deltas.front();
    const NoiseDensity noise = NoiseDensity::uniform(delta);
    Stream rng = derive_stream(s.seed, {kDistortionRole});
    const TrainingSet pub = distort(set, noise, rng);
    std::vector<double> x0, x1, y0, y1;
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (set.examples[i].c) continue;
      x0.push_back(set.examples[i].x[0]);
      x1.push_back(set.examples[i].x[1]);
      y0.push_back(pub.examples[i].x[0]);
      y1.push_back(pub.examples[i].x[1]);
    }
    const GridAxis a0 = axis_for(y0, 3.0 * delta, s.grid_cells);
    const GridAxis a1 = axis_for(y1, 3.0 * delta, s.grid_cells);
    const ReconstructionOptions ro{s.recon_iterations, 1e-4, s.execution};
    emit("recon_density_truth.csv", empirical_histogram_2d(x0, x1, a0, a1).to_csv());
    emit("recon_density_2d.csv", reconstruct_2d(y0, y1, noise, a0, a1, ro).to_csv());
    emit("recon_density_1d.csv",
         product_grid(reconstruct_1d(y0, noise, a0, ro),
                      reconstruct_1d(y1, noise, a1, ro))
             .to_csv());
  } else {
    throw std::invalid_argument("unknown figure '" + std::string(figure) +
                                "' (fig3, fig4, thm2, leak, recon)");
  }
  return written;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("spearman: need two equal-length samples");
  }
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

std::pair<double, double> mean_and_error(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  const double n = static_cast<double>(v.size());
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
  if (v.size() < 2) return {m, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace qppp
