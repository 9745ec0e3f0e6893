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
#include <cstdint>
#include <span>
#include <string>

#include "pulsegraph/ad9910.hpp"
#include "pulsegraph/evaluate.hpp"
#include "pulsegraph/rfsoc.hpp"

namespace pulsegraph {

/// Phase accumulator, exact sine lookup, and amplitude scaling of one DDS.
class DdsCore {
 public:
  void load(const RegisterWords& words) { words_ = words; }
  void clear() { accumulator_ = 0; }

  /// Output for the current tick, then advances the accumulator.
  double tick();

  std::uint32_t accumulator() const { return accumulator_; }
  const RegisterWords& registers() const { return words_; }

 private:
  std::uint32_t accumulator_ = 0;
  RegisterWords words_;
};

/// Sampled at config.sysclk, one sample per tick.
SampledWaveform simulate_ad9910(const Ad9910Record& program,
                                const Ad9910Config& config = {});

struct RfsocChannelState {
  std::array<double, 2> tone_phase{};  // radians
  std::array<double, 2> frame{};       // radians
};

/// Dual-tone, dual-frame channel with persistent frame accumulators.
class RfsocChannelSimulator {
 public:
  explicit RfsocChannelSimulator(RfsocConfig config = {}) : config_(config) {}

  /// Appends the record's samples to out.
  void play(const PulseDataRecord& record, std::vector<double>& out);

  const RfsocChannelState& state() const { return state_; }

 private:
  RfsocConfig config_;
  RfsocChannelState state_;
};

SampledWaveform simulate_rfsoc_channel(std::span<const PulseDataRecord> records,
                                       const RfsocConfig& config = {});

double param_at(const ParamData& p, double t, double duration);
double param_integral(const ParamData& p, double t, double duration);

double rms_compare(const SampledWaveform& a, const SampledWaveform& b);

/// "time_seconds,value" header, one row per sample, 17 significant digits.
std::string to_csv(const SampledWaveform& waveform);

}  // namespace pulsegraph
