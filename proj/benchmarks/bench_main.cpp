// Copyright 2026 The qswap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <benchmark/benchmark.h>

#include "qswap/analysis.hpp"
#include "qswap/random_states.hpp"

namespace {

using namespace qswap;

void BM_ApplyInterferometer(benchmark::State& state) {
  ProtocolParams params;
  const PureState input = prepare_initial(params);
  const ModeUnitary u = bell_interferometer_polarization();
  for (auto _ : state) benchmark::DoNotOptimize(apply_mode_unitary(input, u));
}
BENCHMARK(BM_ApplyInterferometer);

void BM_ApplyRandomUnitary(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto modes = polarization_input_modes();
  const ModeUnitary u(random_unitary(rng, kBellModes), modes);
  const PureState psi =
      random_pure_state(rng, modes, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(apply_mode_unitary(psi, u));
}
BENCHMARK(BM_ApplyRandomUnitary)->Arg(4)->Arg(32)->Arg(128);

void BM_HeraldLossy(benchmark::State& state) {
  ProtocolParams params;
  params.eta = 0.7;
  params.detector = state.range(0) ? Detector::Threshold : Detector::Pnrd;
  const Ensemble input = prepare_initial_lossy(params);
  for (auto _ : state) {
    benchmark::DoNotOptimize(herald(input, canonical_pattern(), params.detector));
  }
}
BENCHMARK(BM_HeraldLossy)->Arg(0)->Arg(1);

void BM_EvaluatePoint(benchmark::State& state) {
  const bool all = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_point(0.5, 0.7, Detector::Threshold, all));
  }
}
BENCHMARK(BM_EvaluatePoint)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
