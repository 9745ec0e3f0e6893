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

#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "pulsegraph/graph.hpp"

namespace pulsegraph::testgen {

/// Linear rise over t0, flat top over t1, linear fall over t2, multiplying a
/// 10 MHz carrier that spans all three.
inline NodeId ramped_tone(Graph& g, double t0 = 1e-6, double t1 = 2e-6,
                          double t2 = 1e-6) {
  NodeId envelope = g.sequence({g.poly({0.0, 1.0 / t0}, t0),
                                g.constant(1.0, t1),
                                g.poly({1.0, -1.0 / t2}, t2)});
  NodeId total = g.sum({t0, t1, t2});
  return g.product({envelope, g.sine(10e6, 0.0, total)});
}

/// Parameters of one random AD9910-style pulse on integer nanosecond ticks.
struct ToneCase {
  double frequency = 0.0;
  double phase = 0.0;
  double amplitude = 1.0;
  std::vector<std::pair<double, double>> frequency_steps;  // (value, seconds)
  std::vector<std::pair<double, double>> amplitude_steps;
  std::vector<std::pair<double, double>> phase_steps;
  double duration = 0.0;
  bool clock = false;
  bool amplitude_first = false;
};

inline ToneCase random_tone_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> ticks(1, 10000);
  ToneCase c;
  c.frequency = unit(rng) * 400e6;
  c.phase = unit(rng) * 2.0 * std::numbers::pi;
  c.amplitude = 2.0 * unit(rng) - 1.0;
  c.clock = unit(rng) < 0.3;
  c.amplitude_first = unit(rng) < 0.5;
  const int mode = std::uniform_int_distribution<int>(0, 3)(rng);
  if (mode == 0) {
    c.duration = ticks(rng) * 1e-9;
    return c;
  }
  const int n = std::uniform_int_distribution<int>(2, 5)(rng);
  std::vector<std::pair<double, double>> steps;
  int total = 0;
  for (int i = 0; i < n; ++i) {
    const int t = std::uniform_int_distribution<int>(1, 2000)(rng);
    total += t;
    double value = 0.0;
    if (mode == 1) value = unit(rng) * 400e6;
    if (mode == 2) value = 2.0 * unit(rng) - 1.0;
    if (mode == 3) value = unit(rng) * 2.0 * std::numbers::pi;
    steps.emplace_back(value, t * 1e-9);
  }
  c.duration = total * 1e-9;
  if (mode == 1) c.frequency_steps = steps;
  if (mode == 2) c.amplitude_steps = steps;
  if (mode == 3) c.phase_steps = steps;
  return c;
}

inline NodeId step_sequence(Graph& g,
                            const std::vector<std::pair<double, double>>& steps) {
  std::vector<NodeId> children;
  for (const auto& [value, seconds] : steps) {
    children.push_back(g.constant(value, seconds));
  }
  return g.sequence(std::move(children));
}

inline NodeId build_tone(Graph& g, const ToneCase& c) {
  NodeId f = c.frequency_steps.empty() ? g.num(c.frequency)
                                       : step_sequence(g, c.frequency_steps);
  NodeId p = c.phase_steps.empty() ? g.num(c.phase)
                                   : step_sequence(g, c.phase_steps);
  NodeId a = c.amplitude_steps.empty() ? g.num(c.amplitude)
                                       : step_sequence(g, c.amplitude_steps);
  std::optional<NodeId> clock;
  if (c.clock) clock = g.clock("sys");
  NodeId s = g.sine(f, p, c.duration, clock);
  return c.amplitude_first ? g.product({a, s}) : g.product({s, a});
}

}  // namespace pulsegraph::testgen
