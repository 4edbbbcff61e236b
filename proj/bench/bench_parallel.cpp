// Copyright 2026 The trajsafe Authors
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

// Serial reference path (threads = 1) against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "trajsafe/commands.hpp"
#include "trajsafe/generator.hpp"
#include "trajsafe/losses.hpp"

namespace
{

using namespace trajsafe;

const Corpus & corpus()
{
  static const Corpus c = [] {
    Corpus out;
    for (auto & g : generate_corpus(2026, {40, 40, 40, 40, 40})) out.scenes.push_back(std::move(g.scene));
    return out;
  }();
  return c;
}

// Mode 1 of every corpus scene, repeated to the requested batch size.
LossBatch batch_of(std::size_t size)
{
  std::vector<Trajectory> trajs;
  std::vector<Scene> scenes;
  std::vector<std::vector<AgentForecast>> forecasts;
  for (std::size_t i = 0; i < size; ++i) {
    const Scene & s = corpus().scenes[i % corpus().size()];
    trajs.push_back(*scene_mode(s, 1));
    scenes.push_back(s);
    forecasts.push_back(constant_velocity_forecast(s));
  }
  return make_loss_batch(trajs, scenes, forecasts);
}

void BM_LossTotal(benchmark::State & state)
{
  const LossBatch batch = batch_of(static_cast<std::size_t>(state.range(0)));
  const Execution exec{static_cast<int>(state.range(1))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(loss_total(batch, LossConfig{}, exec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LossTotal)->ArgNames({"B", "threads"})->ArgsProduct({{64, 1024}, {1, 2, 4, 8}})->UseRealTime();

void BM_GuideCorpus(benchmark::State & state)
{
  const EngineConfig cfg;
  const ConstantVelocityForecaster cv;
  const Execution exec{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_guide(corpus(), cfg, cv, exec));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(corpus().size()));
}
BENCHMARK(BM_GuideCorpus)->ArgName("threads")->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_ScoreCorpus(benchmark::State & state)
{
  const EngineConfig cfg;
  const ConstantVelocityForecaster cv;
  const Execution exec{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_score(corpus(), cfg, cv, exec));
  }
}
BENCHMARK(BM_ScoreCorpus)->ArgName("threads")->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
