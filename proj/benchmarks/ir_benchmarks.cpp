// Copyright 2026 The pulsegraph Authors
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


#include <benchmark/benchmark.h>

#include <random>

#include "pulsegraph/bench.hpp"

namespace {

using namespace pulsegraph;

void BM_SbcGraphTranspile(benchmark::State& state) {
  const Schedule full =
      tile(bench::sbc_unit_graph(), static_cast<std::size_t>(state.range(0)));
  const ChannelMap map = bench::sbc_channel_map();
  for (auto _ : state) {
    benchmark::DoNotOptimize(transpile_schedule_rfsoc(full, map));
  }
  state.SetItemsProcessed(state.iterations() * 3 * state.range(0));
}
BENCHMARK(BM_SbcGraphTranspile)->Arg(1)->Arg(20)->Arg(200);

void BM_SbcDirectTranspile(benchmark::State& state) {
  const direct::Schedule full = direct::tile(
      bench::sbc_unit_direct(), static_cast<std::size_t>(state.range(0)));
  const ChannelMap map = bench::sbc_channel_map();
  for (auto _ : state) {
    benchmark::DoNotOptimize(direct::transpile(full, map));
  }
  state.SetItemsProcessed(state.iterations() * 3 * state.range(0));
}
BENCHMARK(BM_SbcDirectTranspile)->Arg(1)->Arg(20)->Arg(200);

void BM_SbcGraphTile(benchmark::State& state) {
  const Schedule unit = bench::sbc_unit_graph();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        tile(unit, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_SbcGraphTile)->Arg(200);

void BM_VqaGraphRebindTranspile(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  Schedule s = bench::vqa_graph(depth);
  const ChannelMap map = bench::vqa_channel_map();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.1e-6, 10e-6);
  Bindings b;
  for (const auto& [name, ids] : s.parameters()) b[name] = 0.0;
  for (auto _ : state) {
    state.PauseTiming();
    for (auto& [name, v] : b) v = dist(rng);
    state.ResumeTiming();
    bind_parameters(s, b);
    benchmark::DoNotOptimize(transpile_schedule_rfsoc(s, map));
  }
}
BENCHMARK(BM_VqaGraphRebindTranspile)->RangeMultiplier(2)->Range(1, 32);

void BM_VqaDirectRebuildTranspile(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const ChannelMap map = bench::vqa_channel_map();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.1e-6, 10e-6);
  std::vector<double> d(static_cast<std::size_t>(depth * bench::kVqaChannels));
  for (auto _ : state) {
    state.PauseTiming();
    for (auto& v : d) v = dist(rng);
    state.ResumeTiming();
    benchmark::DoNotOptimize(direct::transpile(bench::vqa_direct(depth, d), map));
  }
}
BENCHMARK(BM_VqaDirectRebuildTranspile)->RangeMultiplier(2)->Range(1, 32);

}  // namespace

BENCHMARK_MAIN();
