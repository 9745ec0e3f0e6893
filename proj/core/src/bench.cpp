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


#include "pulsegraph/bench.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "json.hpp"
#include "pulsegraph/error.hpp"
#include "pulsegraph/serialize.hpp"

namespace pulsegraph::bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct SbcPulse {
  double frequency;
  double duration;
};
constexpr SbcPulse kSbcPulses[] = {
    {200e6, 10e-6}, {210e6, 50e-6}, {205e6, 10e-6}};
constexpr double kAmplitude = 0.5;

double vqa_frequency(int channel) { return 200e6 + 1e6 * channel; }

NodeId channel_pulse(Graph& g, double frequency, Arg duration, NodeId frame) {
  const NodeId t0 = g.tone(frequency, 0.0, kAmplitude);
  const NodeId t1 = g.tone(0.0, 0.0, 0.0);
  return g.channel(t0, t1, frame, frame, duration);
}

direct::Pulse direct_pulse(double frequency, double duration) {
  direct::Pulse p;
  p.tones[0].frequency = frequency;
  p.tones[0].amplitude = kAmplitude;
  p.duration = duration;
  return p;
}

std::string channel_name(int i) { return "ch" + std::to_string(i); }

}  // namespace

std::string_view ir_name(Ir ir) { return ir == Ir::Graph ? "graph" : "direct"; }

std::optional<Ir> ir_from_name(std::string_view name) {
  if (name == "graph") return Ir::Graph;
  if (name == "direct") return Ir::Direct;
  return std::nullopt;
}

TrialStats TrialStats::from(std::vector<double> samples) {
  TrialStats s;
  s.samples = std::move(samples);
  if (s.samples.empty()) return s;
  const double n = static_cast<double>(s.samples.size());
  s.min = *std::min_element(s.samples.begin(), s.samples.end());
  s.mean = std::accumulate(s.samples.begin(), s.samples.end(), 0.0) / n;
  double var = 0.0;
  for (double x : s.samples) var += (x - s.mean) * (x - s.mean);
  s.stddev = s.samples.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
  return s;
}

const TrialStats& BenchResult::phase(std::string_view name) const {
  for (const auto& [n, s] : phases) {
    if (n == name) return s;
  }
  raise(ErrorCode::InvalidArgument, "no phase named '" + std::string(name) + "'");
}

Schedule sbc_unit_graph() {
  ScheduleBuilder b({"ch0"});
  Graph& g = b.graph();
  const NodeId frame = g.framerot(0.0);
  b.open_sequential();
  for (const auto& p : kSbcPulses) {
    b.play("ch0", channel_pulse(g, p.frequency, p.duration, frame));
  }
  b.close();
  return b.finalize();
}

direct::Schedule sbc_unit_direct() {
  direct::ScheduleBuilder b({"ch0"});
  b.open_sequential();
  for (const auto& p : kSbcPulses) {
    b.play("ch0", direct_pulse(p.frequency, p.duration));
  }
  b.close();
  return b.finalize();
}

ChannelMap sbc_channel_map() { return {{"ch0", 0}}; }

ChannelMap vqa_channel_map() {
  ChannelMap m;
  for (int i = 0; i < kVqaChannels; ++i) m[channel_name(i)] = i;
  return m;
}

std::string vqa_parameter(int layer, int channel) {
  return "d_" + std::to_string(layer) + "_" + std::to_string(channel);
}

Schedule vqa_graph(int depth) {
  std::vector<std::string> channels;
  for (int i = 0; i < kVqaChannels; ++i) channels.push_back(channel_name(i));
  ScheduleBuilder b(channels);
  Graph& g = b.graph();
  const NodeId frame = g.framerot(0.0);
  b.open_sequential();
  for (int layer = 0; layer < depth; ++layer) {
    b.open_parallel();
    for (int ch = 0; ch < kVqaChannels; ++ch) {
      b.play(channel_name(ch),
             channel_pulse(g, vqa_frequency(ch), g.var(vqa_parameter(layer, ch)),
                           frame));
    }
    b.close();
  }
  b.close();
  return b.finalize();
}

direct::Schedule vqa_direct(int depth, const std::vector<double>& durations) {
  std::vector<std::string> channels;
  for (int i = 0; i < kVqaChannels; ++i) channels.push_back(channel_name(i));
  direct::ScheduleBuilder b(channels);
  b.open_sequential();
  for (int layer = 0; layer < depth; ++layer) {
    b.open_parallel();
    for (int ch = 0; ch < kVqaChannels; ++ch) {
      b.play(channel_name(ch),
             direct_pulse(vqa_frequency(ch),
                          durations[static_cast<std::size_t>(
                              layer * kVqaChannels + ch)]));
    }
    b.close();
  }
  b.close();
  return b.finalize();
}

BenchResult run_sbc(Ir ir, const SbcOptions& options) {
  if (options.trials < 1 || options.reps < 1) {
    raise(ErrorCode::InvalidArgument, "trials and reps must be positive");
  }
  const auto reps = static_cast<std::size_t>(options.reps);
  const ChannelMap map = sbc_channel_map();
  std::vector<double> construct, tiling, transpiling;
  BenchResult result;
  std::int64_t nodes = 0;
  for (int trial = -options.warmup; trial < options.trials; ++trial) {
    double tc = 0.0, tt = 0.0, tx = 0.0;
    if (ir == Ir::Graph) {
      auto t0 = Clock::now();
      Schedule unit = sbc_unit_graph();
      tc = seconds_since(t0);
      t0 = Clock::now();
      Schedule full = tile(unit, reps);
      tt = seconds_since(t0);
      t0 = Clock::now();
      RfsocProgram out = transpile_schedule_rfsoc(full, map);
      tx = seconds_since(t0);
      nodes = static_cast<std::int64_t>(full.graph().size());
      result.output = std::move(out);
    } else {
      auto t0 = Clock::now();
      direct::Schedule unit = sbc_unit_direct();
      tc = seconds_since(t0);
      t0 = Clock::now();
      direct::Schedule full = direct::tile(unit, reps);
      tt = seconds_since(t0);
      t0 = Clock::now();
      RfsocProgram out = direct::transpile(full, map);
      tx = seconds_since(t0);
      result.output = std::move(out);
    }
    if (trial < 0) continue;
    construct.push_back(tc);
    tiling.push_back(tt);
    transpiling.push_back(tx);
  }
  result.benchmark = "sbc";
  result.ir = ir;
  result.trials = options.trials;
  result.phases = {{"construct", TrialStats::from(std::move(construct))},
                   {"tile", TrialStats::from(std::move(tiling))},
                   {"transpile", TrialStats::from(std::move(transpiling))}};
  result.counts["reps"] = options.reps;
  result.counts["records"] =
      static_cast<std::int64_t>(result.output.at("ch0").size());
  if (ir == Ir::Graph) result.counts["nodes"] = nodes;
  return result;
}

BenchResult run_vqa(Ir ir, const VqaOptions& options) {
  if (options.trials < 1 || options.depth < 1) {
    raise(ErrorCode::InvalidArgument, "trials and depth must be positive");
  }
  const int params = options.depth * kVqaChannels;
  const ChannelMap map = vqa_channel_map();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> dist(0.1e-6, 10e-6);
  std::vector<double> draws(static_cast<std::size_t>(params));

  std::optional<Schedule> schedule;
  Bindings bindings;
  std::vector<double*> slots;
  std::int64_t nodes_before = 0;
  if (ir == Ir::Graph) {
    schedule.emplace(vqa_graph(options.depth));
    for (int layer = 0; layer < options.depth; ++layer) {
      for (int ch = 0; ch < kVqaChannels; ++ch) {
        slots.push_back(&bindings[vqa_parameter(layer, ch)]);
      }
    }
    nodes_before = static_cast<std::int64_t>(schedule->graph().size());
  }

  BenchResult result;
  std::vector<double> update, transpiling, total;
  for (int trial = -options.warmup; trial < options.trials; ++trial) {
    for (auto& d : draws) d = dist(rng);
    double tu = 0.0, tx = 0.0;
    if (ir == Ir::Graph) {
      for (std::size_t i = 0; i < draws.size(); ++i) *slots[i] = draws[i];
      auto t0 = Clock::now();
      bind_parameters(*schedule, bindings);
      tu = seconds_since(t0);
      t0 = Clock::now();
      RfsocProgram out = transpile_schedule_rfsoc(*schedule, map);
      tx = seconds_since(t0);
      result.output = std::move(out);
    } else {
      auto t0 = Clock::now();
      direct::Schedule s = vqa_direct(options.depth, draws);
      tu = seconds_since(t0);
      t0 = Clock::now();
      RfsocProgram out = direct::transpile(s, map);
      tx = seconds_since(t0);
      result.output = std::move(out);
    }
    if (trial < 0) continue;
    update.push_back(tu);
    transpiling.push_back(tx);
    total.push_back(tu + tx);
  }
  result.benchmark = "vqa";
  result.ir = ir;
  result.depth = options.depth;
  result.trials = options.trials;
  result.phases = {
      {ir == Ir::Graph ? "bind" : "rebuild", TrialStats::from(std::move(update))},
      {"transpile", TrialStats::from(std::move(transpiling))},
      {"total", TrialStats::from(std::move(total))}};
  result.counts["parameters"] =
      ir == Ir::Graph ? static_cast<std::int64_t>(schedule->parameter_count())
                      : params;
  std::int64_t records = 0;
  for (const auto& [ch, recs] : result.output) {
    records += static_cast<std::int64_t>(recs.size());
  }
  result.counts["records"] = records;
  if (ir == Ir::Graph) {
    result.counts["nodes"] = nodes_before;
    result.counts["nodes_after_trials"] =
        static_cast<std::int64_t>(schedule->graph().size());
  }
  return result;
}

std::string to_json(const BenchResult& result) {
  using json = nlohmann::json;
  json phases = json::object();
  for (const auto& [name, s] : result.phases) {
    phases[name] = json{{"min", s.min},
                        {"mean", s.mean},
                        {"stddev", s.stddev},
                        {"unit", "seconds"}};
  }
  json counts = json::object();
  for (const auto& [k, v] : result.counts) counts[k] = v;
  json doc{{"benchmark", result.benchmark},
           {"ir", std::string(ir_name(result.ir))},
           {"trials", result.trials},
           {"phases", std::move(phases)},
           {"counts", std::move(counts)}};
  if (result.depth) doc["depth"] = *result.depth;
  return canonicalize(doc.dump());
}

}  // namespace pulsegraph::bench
