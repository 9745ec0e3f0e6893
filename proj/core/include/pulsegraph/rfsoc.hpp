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

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pulsegraph/ad9910.hpp"
#include "pulsegraph/graph.hpp"
#include "pulsegraph/munch.hpp"

namespace pulsegraph {

class Schedule;

struct RfsocConfig {
  std::size_t channel_count = 8;
  double sample_rate = 1e9;
};

/// Spline knots, emitted in tuple form.
struct SplineKnots {
  std::vector<double> knots;

  friend bool operator==(const SplineKnots&, const SplineKnots&) = default;
};

/// Scalar, spline (tuple form) or discrete steps (list form).
using ParamData = std::variant<double, SplineKnots, std::vector<double>>;

struct ToneData {
  ParamData frequency = 0.0;
  ParamData phase = 0.0;
  ParamData amplitude = 0.0;
  bool sync_phase = false;
  std::optional<int> frame_index;
  bool feedback_enable = false;

  friend bool operator==(const ToneData&, const ToneData&) = default;
};

struct FramerotData {
  ParamData rotation = 0.0;
  bool apply_at_start = false;
  bool apply_at_end = false;
  bool clear_accumulator = false;

  friend bool operator==(const FramerotData&, const FramerotData&) = default;
};

struct ChannelData {
  std::array<ToneData, 2> tones;
  std::array<FramerotData, 2> frames;
  double duration = 0.0;

  friend bool operator==(const ChannelData&, const ChannelData&) = default;
};

struct PulseDataRecord {
  int channel_index = 0;
  double duration = 0.0;
  std::array<ToneData, 2> tones;
  std::array<FramerotData, 2> frames;

  friend bool operator==(const PulseDataRecord&,
                         const PulseDataRecord&) = default;
};

using RfsocRecord = std::variant<ChannelData, ConstDC>;
using RfsocMuncher = Muncher<RfsocRecord, RfsocConfig>;

/// Rules: "zero", "channel", "base-graph". Expects pipeline-normalized input.
const RfsocMuncher& rfsoc_muncher();

/// Rewrites a sum of one or two AD9910-style template graphs into a
/// Channel node with default frames.
NodeId reduce_base_graph(Graph& graph, NodeId root);

RfsocRecord munch_rfsoc_channel(const Graph& graph, NodeId root,
                                const RfsocConfig& config = {});

/// Runs the transform pipeline on root, then munches.
RfsocRecord transpile_rfsoc_channel(Graph& graph, NodeId root,
                                    const RfsocConfig& config = {});

PulseDataRecord to_pulse_record(const ChannelData& data, int channel_index,
                                const RfsocConfig& config = {});
PulseDataRecord to_pulse_record(const RfsocRecord& record, int channel_index,
                                const RfsocConfig& config = {});
ChannelData to_channel_data(const PulseDataRecord& record);

/// A ConstDC no-op as a zero-amplitude record.
PulseDataRecord silent_record(double duration, int channel_index,
                              const RfsocConfig& config = {});

using ChannelMap = std::map<std::string, int>;
using RfsocProgram = std::map<std::string, std::vector<PulseDataRecord>>;

/// Walks each channel's root sequence; zero-duration segments are skipped.
RfsocProgram transpile_schedule_rfsoc(const Schedule& schedule,
                                      const ChannelMap& channel_map,
                                      const RfsocConfig& config = {});

}  // namespace pulsegraph
