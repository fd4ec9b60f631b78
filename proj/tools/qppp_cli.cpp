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

// qppp command line. Every option lives on the root command so a flat
// key=value config file can set any of them; subcommands fall through.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qppp/data.hpp"
#include "qppp/harness.hpp"
#include "qppp/kernels.hpp"
#include "qppp/perceptron.hpp"
#include "qppp/privacy.hpp"
#include "qppp/protocol.hpp"
#include "qppp/rng.hpp"
#include "qppp/text.hpp"

namespace {

using namespace qppp;

struct Options {
  std::uint64_t seed = 1;
  std::string out_dir = "results";
  std::string out;  // single output file, "" = stdout
  int n = 8;
  int k = 2;
  std::vector<int> n2 = {2, 4, 8};
  std::string attack = "honest";
  int reps = 20;
  long long trials = 100000;
  int max_rounds = kDefaultMaxRounds;
  int grid_cells = 20;
  int recon_iterations = 500;
  std::vector<std::string> deltas;
  std::vector<std::string> generators;
  std::vector<std::string> datasets;
  std::vector<std::string> methods;
  std::string dataset = "gen1:N=64";
  std::string generator = "R0:delta=0.0009765625";
  std::string method = "uniform";
  std::string delta = "1";
  double confidence = 95.0;
  bool serial = false;
  bool full = false;

  std::string input;
  std::string oracle = "parity";
  std::string transcript;
  int runs = 1;
  std::string experiment;
  std::string figure;
};

Execution execution(const Options& o) {
  return o.serial ? Execution::kSerial : Execution::kParallel;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(o.out, text);
    std::cerr << "wrote " << o.out << "\n";
  }
}

Oracle make_oracle(const std::string& name) {
  if (name == "parity") return parity_oracle;
  if (name == "and") {
    return [](const BitString& d) { return d.popcount() == d.size(); };
  }
  if (name == "or") return [](const BitString& d) { return d.popcount() > 0; };
  if (name == "majority") {
    return [](const BitString& d) { return 2 * d.popcount() > d.size(); };
  }
  throw std::invalid_argument("unknown oracle '" + name +
                              "' (parity, and, or, majority)");
}

void cmd_protocol_run(const Options& o) {
  const RegisterLayout layout(o.n, o.k);
  const BobStrategy strategy = parse_strategy(o.attack, layout);
  const ProtocolParams params{layout, make_oracle(o.oracle), true};
  std::string transcripts;
  std::string table = "run,input,answer,expected,detected,site,rounds,leaked_bits\n";
  for (int r = 0; r < o.runs; ++r) {
    const auto rr = static_cast<std::uint64_t>(r);
    Stream data = derive_stream(o.seed, {rr, kDataRole});
    Stream alice = derive_stream(o.seed, {rr, kAliceRole});
    Stream bob = derive_stream(o.seed, {rr, kBobRole});
    BitString x(layout.data_qubits());
    if (!o.input.empty()) {
      x = BitString::from_string(o.input);
      if (x.size() != layout.data_qubits()) {
        throw std::invalid_argument("--input needs n*k = " +
                                    std::to_string(layout.data_qubits()) + " bits");
      }
    } else {
      for (int i = 0; i < x.size(); ++i) x.set(i, fair_coin(data));
    }
    const ProtocolOutcome out = run_data_system(x, params, strategy, alice, bob);
    table += std::to_string(r) + "," + x.to_string() + "," +
             (out.answer ? std::to_string(*out.answer) : std::string("none")) +
             "," + std::to_string(params.f(x)) + "," +
             std::to_string(out.detected) + "," +
             std::string(to_string(out.site)) + "," +
             std::to_string(out.rounds_executed) + "," +
             std::to_string(out.leaked_bits.size()) + "\n";
    transcripts += format_transcript(out, layout, strategy);
  }
  emit(o, table);
  if (!o.transcript.empty()) {
    write_text_file(o.transcript, transcripts);
    std::cerr << "wrote " << o.transcript << "\n";
  }
}

TrainingSet load(const Options& o) {
  return materialize(parse_dataset_spec(o.dataset), o.seed);
}

std::string weights(const Classifier& c) {
  std::string s;
  for (double w : c.w) s += format_number(w) + ";";
  return s + format_number(c.b);
}

const char* kTrainHeader =
    "rep,terminated,rounds,updates,success,detection_events,examples_leaked,"
    "classifier\n";

std::string train_line(int rep, const TrainRecord& r, long long leaked,
                       const std::string& classifier) {
  return std::to_string(rep) + "," + std::to_string(r.terminated) + "," +
         std::to_string(r.rounds) + "," + std::to_string(r.updates) + "," +
         std::to_string(r.success) + "," + std::to_string(r.detection_events) +
         "," + std::to_string(leaked) + "," + classifier + "\n";
}

void cmd_train_quantum(const Options& o) {
  Stream pad = derive_stream(o.seed, {kPermutationRole});
  const TrainingSet set = pad_to_power_of_two(load(o), pad);
  const RegisterLayout layout(set.codec.bits(), set.k);
  std::string text = kTrainHeader;
  for (int r = 0; r < o.reps; ++r) {
    QuantumTrainConfig cfg{parse_generator(o.generator), o.max_rounds,
                           parse_strategy(o.attack, layout),
                           derive_seed(o.seed, {static_cast<std::uint64_t>(r)}),
                           true};
    const auto res = train_quantum(set, cfg);
    text += train_line(r, res.record, res.ledger.examples_leaked,
                       weights(res.classifier));
  }
  emit(o, text);
}

void cmd_train_classical(const Options& o) {
  const auto res = train_classical(load(o), o.max_rounds);
  emit(o, std::string(kTrainHeader) + train_line(0, res.record, 0, weights(res.classifier)));
}

void cmd_train_baseline(const Options& o) {
  const TrainingSet set = load(o);
  const BaselineMethod m{parse_baseline_kind(o.method), parse_real(o.delta),
                         o.grid_cells,
                         {o.recon_iterations, 1e-4, execution(o)}};
  const auto recs = baseline_training_reps(set, m, o.max_rounds, o.reps, o.seed,
                                           execution(o));
  std::string text = kTrainHeader;
  for (int r = 0; r < o.reps; ++r) {
    text += train_line(r, recs[static_cast<std::size_t>(r)], 0, "");
  }
  emit(o, text);
}

void cmd_privacy_table(const Options& o) {
  std::string text =
      "n,k,n2,scope,detection_probability,expected_leak_count,privacy_level\n";
  const int n1 = default_codec().integer_bits();
  for (int n2 : o.n2) {
    for (AttackScope scope : {AttackScope::kAttribute, AttackScope::kExample}) {
      std::string leak = "";
      if (scope == AttackScope::kExample && n2 * o.k > 1) {
        leak = format_number(expected_leak_count(o.n, n2, o.k));
      }
      text += std::to_string(o.n) + "," + std::to_string(o.k) + "," +
              std::to_string(n2) + "," + std::string(to_string(scope)) + "," +
              format_number(detection_probability(o.n, n2, o.k, scope)) + "," +
              leak + "," + format_number(privacy_level(n1, n2)) + "\n";
    }
  }
  if (!o.deltas.empty()) {
    text += "\ndelta,confidence,privacy_amount\n";
    for (const auto& d : o.deltas) {
      const double delta = parse_real(d);
      text += format_number(delta) + "," + format_number(o.confidence) + "," +
              format_number(privacy_amount_uniform(delta, o.confidence)) + "\n";
    }
  }
  emit(o, text);
}

void cmd_reproduce(const Options& o, bool reps_set, bool trials_set) {
  ReproduceOptions r;
  r.out_dir = o.out_dir;
  r.seed = o.seed;
  r.reps = reps_set ? o.reps : 0;
  r.trials = trials_set ? o.trials : 0;
  r.full = o.full;
  r.execution = execution(o);
  if (o.full) {
    std::cerr << "warning: --full runs the long grids with 100 repetitions; "
                 "expect hours rather than minutes\n";
  }
  const std::vector<std::string> figures =
      o.figure == "all" ? std::vector<std::string>{"thm2", "leak", "recon", "fig3", "fig4"}
                        : std::vector<std::string>{o.figure};
  for (const auto& f : figures) {
    for (const auto& p : reproduce(f, r)) std::cout << p << "\n";
  }
}

void cmd_run(const Options& o, const CLI::App& root) {
  const ExperimentKind kind = parse_experiment_kind(o.experiment);
  ExperimentSpec s = default_spec(kind, o.full);
  auto given = [&](const char* name) { return root.count(name) > 0; };
  if (given("--deltas")) {
    s.deltas.clear();
    for (const auto& d : o.deltas) s.deltas.push_back(parse_real(d));
  }
  if (given("--generators")) {
    s.generators.clear();
    for (const auto& g : o.generators) s.generators.push_back(parse_generator_kind(g));
  }
  if (given("--datasets")) s.datasets = o.datasets;
  if (given("--methods")) {
    s.methods.clear();
    for (const auto& m : o.methods) s.methods.push_back(parse_baseline_kind(m));
  }
  if (given("--attack")) s.attack = o.attack;
  if (given("--n")) s.n = o.n;
  if (given("--k")) s.k = o.k;
  if (given("--n2")) s.n2 = o.n2;
  if (given("--reps")) s.reps = o.reps;
  if (given("--trials")) s.trials = o.trials;
  if (given("--max-rounds")) s.max_rounds = o.max_rounds;
  if (given("--grid-cells")) s.grid_cells = o.grid_cells;
  if (given("--recon-iterations")) s.recon_iterations = o.recon_iterations;
  s.seed = o.seed;
  s.out_dir = o.out_dir;
  s.execution = execution(o);
  std::cout << run_experiment_to_file(s) << "\n";
}

void cmd_dataset_gen(const Options& o) { emit(o, format_dataset(load(o))); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qppp: private perceptron protocol simulator"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file; flags override it");
  Options o;

  app.add_option("--seed", o.seed, "master seed")->capture_default_str();
  app.add_option("--out-dir", o.out_dir, "directory for experiment CSVs")
      ->envname("QPPP_OUT_DIR")
      ->capture_default_str();
  app.add_option("--out", o.out, "write single-file output here instead of stdout");
  app.add_option("--n", o.n, "bits per attribute")->capture_default_str();
  app.add_option("--k", o.k, "attributes")->capture_default_str();
  app.add_option("--n2", o.n2, "bits Bob tries to learn")->delimiter(',');
  app.add_option("--attack", o.attack,
                 "honest | measure:<qubits> | entangle:<qubits> | guess | resend, "
                 "optional :rounds=<digits>")
      ->capture_default_str();
  app.add_option("--reps", o.reps, "repetitions per cell")->capture_default_str();
  app.add_option("--trials", o.trials, "protocol trials or leak sequences")
      ->capture_default_str();
  app.add_option("--max-rounds", o.max_rounds, "perceptron round cap")
      ->capture_default_str();
  app.add_option("--grid-cells", o.grid_cells, "cells per reconstruction axis")
      ->capture_default_str();
  app.add_option("--recon-iterations", o.recon_iterations,
                 "reconstruction iteration cap")
      ->capture_default_str();
  app.add_option("--deltas", o.deltas, "noise scales, e.g. 1/1024,1,8")->delimiter(',');
  app.add_option("--generators", o.generators, "R0..R4")->delimiter(',');
  app.add_option("--datasets", o.datasets, "dataset specs");
  app.add_option("--methods", o.methods, "baseline names")->delimiter(',');
  app.add_option("--dataset", o.dataset, "gen1:N=64[:seed=7] or file:path")
      ->capture_default_str();
  app.add_option("--generator", o.generator, "e.g. R2:delta=0.5")->capture_default_str();
  app.add_option("--method", o.method,
                 "uniform | normal | uniform-recon1d | uniform-recon2d")
      ->capture_default_str();
  app.add_option("--delta", o.delta, "baseline noise scale")->capture_default_str();
  app.add_option("--confidence", o.confidence, "percent, for the privacy amount")
      ->capture_default_str();
  app.add_option("--input", o.input, "protocol run: n*k bit input, random when omitted");
  app.add_option("--oracle", o.oracle, "protocol run: parity | and | or | majority")
      ->capture_default_str();
  app.add_option("--runs", o.runs, "protocol run: independent runs")
      ->capture_default_str();
  app.add_option("--transcript", o.transcript, "protocol run: write transcripts here");
  app.add_flag("--serial", o.serial, "disable OpenMP in the kernels");
  app.add_flag("--full", o.full, "long grids and 100 repetitions");

  auto* protocol = app.add_subcommand("protocol", "single protocol executions");
  protocol->require_subcommand(1);
  auto* prun = protocol->add_subcommand("run", "run the three-round protocol");

  auto* train = app.add_subcommand("train", "perceptron training");
  train->require_subcommand(1);
  auto* tq = train->add_subcommand("quantum", "protocol-backed training");
  auto* tc = train->add_subcommand("classical", "plain perceptron");
  auto* tb = train->add_subcommand("baseline", "randomization baselines");

  auto* privacy = app.add_subcommand("privacy", "privacy formulas");
  privacy->require_subcommand(1);
  auto* ptable = privacy->add_subcommand("table", "detection and leak table");

  auto* repro = app.add_subcommand("reproduce", "regenerate a figure's data");
  repro->add_option("figure", o.figure, "fig3 | fig4 | thm2 | leak | recon | all")
      ->required();

  auto* run = app.add_subcommand("run", "run one experiment grid");
  run->add_option("experiment", o.experiment,
                  "protocol-detection | fig3-rounds | fig4-compare | thm2-sweep | "
                  "leak-expectation | recon-compare")
      ->required();

  auto* dataset = app.add_subcommand("dataset", "datasets");
  dataset->require_subcommand(1);
  auto* dgen = dataset->add_subcommand("gen", "generate or normalise a dataset");

  for (auto* sub : {protocol, prun, train, tq, tc, tb, privacy, ptable, repro, run,
                    dataset, dgen}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*prun) {
      cmd_protocol_run(o);
    } else if (*tq) {
      cmd_train_quantum(o);
    } else if (*tc) {
      cmd_train_classical(o);
    } else if (*tb) {
      cmd_train_baseline(o);
    } else if (*ptable) {
      cmd_privacy_table(o);
    } else if (*repro) {
      cmd_reproduce(o, app.count("--reps") > 0, app.count("--trials") > 0);
    } else if (*run) {
      cmd_run(o, app);
    } else if (*dgen) {
      cmd_dataset_gen(o);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
