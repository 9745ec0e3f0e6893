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
#include <variant>
#include <vector>

#include "pulsegraph/graph.hpp"
#include "pulsegraph/munch.hpp"

namespace pulsegraph {

class Schedule;

struct Ad9910Config {
  double sysclk = 1e9;
  double max_frequency = 4e8;
  int ftw_bits = 32;
  int pow_bits = 16;
  int asf_bits = 14;
  std::size_t ram_slots = 1024;
};

struct ConstDC {
  double amplitude = 0.0;
  double duration = 0.0;

  friend bool operator==(const ConstDC&, const ConstDC&) = default;
};

struct StepWaveform {
  std::vector<ConstDC> steps;

  double duration() const;
  friend bool operator==(const StepWaveform&, const StepWaveform&) = default;
};

struct SingleTone {
  double frequency = 0.0;
  double phase = 0.0;
  double amplitude = 0.0;
  double duration = 0.0;
  bool phase_continuous = false;

  friend bool operator==(const SingleTone&, const SingleTone&) = default;
};

using StepParam = std::variant<double, StepWaveform>;

struct DiscreteSine {
  StepParam frequency = 0.0;
  StepParam phase = 0.0;
  StepParam amplitude = 0.0;
  double duration = 0.0;
  bool phase_continuous = false;

  friend bool operator==(const DiscreteSine&, const DiscreteSine&) = default;
};

using Ad9910Record = std::variant<ConstDC, SingleTone, DiscreteSine>;

struct RegisterWords {
  std::uint32_t ftw = 0;
  std::uint16_t pow = 0;
  std::uint16_t asf = 0;

  friend bool operator==(const RegisterWords&, const RegisterWords&) = default;
};

// Register word formulas. A negative amplitude is carried as a half-turn
// phase offset since the amplitude word is unsigned.
std::uint32_t frequency_word(double frequency, const Ad9910Config& config = {});
std::uint16_t phase_word(double phase);
std::uint16_t amplitude_word(double amplitude);
RegisterWords quantize(double frequency, double phase, double amplitude,
                       const Ad9910Config& config = {});
RegisterWords quantize_registers(const SingleTone& tone,
                                 const Ad9910Config& config = {});

/// Optional Product(amplitude, Sine) around a Sine, either operand order.
struct SineTemplate {
  std::optional<NodeId> amplitude;
  NodeId sine;
};
std::optional<SineTemplate> match_sine_template(const Graph& graph,
                                                NodeId root);

/// Leaf parameter shapes accepted by the template: a Sequence whose children
/// are all Const nodes, or a durationless scalar expression.
bool is_step_function(const Graph& graph, NodeId id);
bool is_scalar_expression(const Graph& graph, NodeId id);

using Ad9910Muncher = Muncher<Ad9910Record, Ad9910Config>;

/// Rules: "zero", "template". Expects pipeline-normalized input.
const Ad9910Muncher& ad9910_muncher();

Ad9910Record munch_ad9910(const Graph& graph, NodeId root,
                          const Ad9910Config& config = {});

/// Runs the transform pipeline on root, then munches.
Ad9910Record transpile_ad9910(Graph& graph, NodeId root,
                              const Ad9910Config& config = {});

double record_duration(const Ad9910Record& record);

/// One record per non-empty top-level segment of each channel.
std::map<std::string, std::vector<Ad9910Record>> transpile_schedule_ad9910(
    const Schedule& schedule, const Ad9910Config& config = {});

}  // namespace pulsegraph
