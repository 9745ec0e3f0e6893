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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pulsegraph/rfsoc.hpp"

// Baseline IR without graphs: flat concrete pulses per channel with the same
// context-based builder interface as ScheduleBuilder.
namespace pulsegraph::direct {

struct Tone {
  double frequency = 0.0;
  double phase = 0.0;
  double amplitude = 0.0;
  bool sync_phase = false;
  std::optional<int> frame_index;
  bool feedback_enable = false;
};

struct Frame {
  double rotation = 0.0;
  bool apply_at_start = false;
  bool apply_at_end = false;
  bool clear_accumulator = false;
};

struct Pulse {
  std::array<Tone, 2> tones;
  std::array<Frame, 2> frames;
  double duration = 0.0;

  static Pulse silent(double duration);
};

struct Schedule {
  std::vector<std::string> channels;
  std::map<std::string, std::vector<Pulse>> pulses;
  double total_duration = 0.0;
};

namespace detail {
struct BuilderContext;
}  // namespace detail

class ScheduleBuilder {
 public:
  explicit ScheduleBuilder(std::vector<std::string> channels = {});
  ~ScheduleBuilder();
  ScheduleBuilder(ScheduleBuilder&&) noexcept;
  ScheduleBuilder& operator=(ScheduleBuilder&&) noexcept;

  void open_sequential();
  void open_parallel();
  void close();
  void play(const std::string& channel, const Pulse& pulse);
  Schedule finalize();

 private:
  using Context = detail::BuilderContext;
  std::vector<std::string> declared_;
  std::vector<std::string> played_;
  std::vector<std::unique_ptr<Context>> stack_;
  std::vector<std::unique_ptr<Context>> closed_;
};

/// Concatenates n copies of every channel's pulse list.
Schedule tile(const Schedule& fragment, std::size_t n);

RfsocProgram transpile(const Schedule& schedule, const ChannelMap& channel_map,
                       const RfsocConfig& config = {});

}  // namespace pulsegraph::direct
