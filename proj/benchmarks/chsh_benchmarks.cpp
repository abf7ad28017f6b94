// Copyright 2026 The chshlab Authors
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

#include <benchmark/benchmark.h>

#include "chsh/engine.hpp"
#include "chsh/experiment.hpp"
#include "chsh/pcsft.hpp"
#include "chsh/presets.hpp"
#include "chsh/random_ops.hpp"
#include "chsh/rng.hpp"
#include "chsh/spectral.hpp"

namespace {

using namespace chsh;

void BM_Eigendecomposition(benchmark::State& state) {
  CounterRng rng(1, 0);
  const HermitianOperator x = random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(eig(x));
}
BENCHMARK(BM_Eigendecomposition)->Arg(4)->Arg(16)->Arg(64);

void BM_BellOperator(benchmark::State& state) {
  CounterRng rng(2, 0);
  const auto d = static_cast<std::size_t>(state.range(0));
  const BellScenario s = random_tensor_scenario(d, d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(bell_operator(s));
}
BENCHMARK(BM_BellOperator)->Arg(2)->Arg(4)->Arg(8);

void BM_Theorem1Check(benchmark::State& state) {
  CounterRng rng(3, 0);
  const auto d = static_cast<std::size_t>(state.range(0));
  const BellScenario s = random_tensor_scenario(d, d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(theorem1_check(s));
}
BENCHMARK(BM_Theorem1Check)->Arg(2)->Arg(3)->Arg(4);

void BM_ChshExperiment(benchmark::State& state) {
  const BellScenario s = scenario_preset("optimal-qubit");
  const PureState psi = state_preset("singlet");
  ExperimentConfig cfg;
  cfg.rounds_per_setting = static_cast<std::uint64_t>(state.range(0));
  cfg.seed = 4;
  for (auto _ : state) benchmark::DoNotOptimize(run_chsh_experiment(s, psi, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 4);
}
BENCHMARK(BM_ChshExperiment)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_FieldSampling(benchmark::State& state) {
  const FieldPreset p = field_preset("random-psd-4");
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_field(p.covariance, 5, n, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FieldSampling)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_MaxStateFromSquare(benchmark::State& state) {
  CounterRng rng(6, 0);
  const HermitianOperator c = random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(max_state_from_square(c));
}
BENCHMARK(BM_MaxStateFromSquare)->Arg(4)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
