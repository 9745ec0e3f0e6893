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


#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pulsegraph/direct.hpp"
#include "pulsegraph/rfsoc.hpp"
#include "pulsegraph/schedule.hpp"

namespace pulsegraph::bench {

enum class Ir { Graph, Direct };
std::string_view ir_name(Ir ir);
std::optional<Ir> ir_from_name(std::string_view name);

struct TrialStats {
  std::vector<double> samples;  // seconds
  double min = 0.0;
  double mean = 0.0;
  double stddev = 0.0;

  static TrialStats from(std::vector<double> samples);
};

struct BenchResult {
  std::string benchmark;
  Ir ir = Ir::Graph;
  std::optional<int> depth;
  int trials = 0;
  std::vector<std::pair<std::string, TrialStats>> phases;
  std::map<std::string, std::int64_t> counts;
  RfsocProgram output;  // from the last trial

  const TrialStats& phase(std::string_view name) const;
};

struct SbcOptions {
  int trials = 500;
  int reps = 200;
  int warmup = 10;
};

struct VqaOptions {
  int depth = 1;
  int trials = 100;
  int warmup = 10;
  std::uint64_t seed = 20240101;
};

// Unit schedules shared by the benchmarks and their tests.
Schedule sbc_unit_graph();
direct::Schedule sbc_unit_direct();
ChannelMap sbc_channel_map();

constexpr int kVqaChannels = 8;
ChannelMap vqa_channel_map();
/// Parametrized: one Var-duration Channel pulse per channel per layer.
Schedule vqa_graph(int depth);
std::string vqa_parameter(int layer, int channel);
direct::Schedule vqa_direct(int depth, const std::vector<double>& durations);

/// Phases: construct, tile, transpile.
BenchResult run_sbc(Ir ir, const SbcOptions& options = {});

/// Phases: bind (graph) or rebuild (direct), transpile, total.
BenchResult run_vqa(Ir ir, const VqaOptions& options = {});

std::string to_json(const BenchResult& result);

}  // namespace pulsegraph::bench
