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

// Serial reference vs OpenMP paths of the Monte Carlo and reconstruction
// kernels. Arg 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include <vector>

#include "qppp/baselines.hpp"
#include "qppp/data.hpp"
#include "qppp/kernels.hpp"
#include "qppp/privacy.hpp"

namespace {

using namespace qppp;

Execution mode(const benchmark::State& state) {
  return state.range(0) ? Execution::kParallel : Execution::kSerial;
}

void BM_TallyProtocol(benchmark::State& state) {
  const RegisterLayout layout(8, 2);
  const BobStrategy attack = reduction_attack(layout, 4, AttackScope::kExample);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        tally_protocol(layout, parity_oracle, attack, 20000, 7, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_TallyProtocol)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Reconstruct2D(benchmark::State& state) {
  Stream rng = derive_stream(3, {kDataRole});
  const TrainingSet set = generate_set3(1024, rng);
  const NoiseDensity noise = NoiseDensity::uniform(1.0);
  const TrainingSet pub = distort(set, noise, rng);
  std::vector<double> x0, x1;
  for (const auto& e : pub.examples) {
    x0.push_back(e.x[0]);
    x1.push_back(e.x[1]);
  }
  const int cells = static_cast<int>(state.range(1));
  const GridAxis a0 = axis_for(x0, 3.0, cells);
  const GridAxis a1 = axis_for(x1, 3.0, cells);
  const ReconstructionOptions opt{50, 0.0, mode(state)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct_2d(x0, x1, noise, a0, a1, opt));
  }
}
BENCHMARK(BM_Reconstruct2D)
    ->ArgsProduct({{0, 1}, {20, 64}})
    ->Unit(benchmark::kMillisecond);

void BM_QuantumTrainingReps(benchmark::State& state) {
  Stream rng = derive_stream(5, {kDataRole});
  const TrainingSet set = generate_set1(64, rng);
  QuantumTrainConfig cfg{NoiseGenerator(NoiseGenerator::Kind::kR2, 1.0), 2000,
                         BobStrategy::honest(), 0, true};
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantum_training_reps(set, cfg, 8, 11, mode(state)));
  }
}
BENCHMARK(BM_QuantumTrainingReps)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
