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


#include "pulsegraph/dds_sim.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "pulsegraph/spline.hpp"

namespace pulsegraph {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTwo32 = 4294967296.0;

std::size_t tick_count(double duration, double rate) {
  return static_cast<std::size_t>(std::llround(duration * rate));
}

double step_value(const StepParam& p, std::size_t step) {
  if (const auto* v = std::get_if<double>(&p)) return *v;
  return std::get<StepWaveform>(p).steps[step].amplitude;
}

const StepWaveform* stepped(const DiscreteSine& d) {
  for (const StepParam* p : {&d.frequency, &d.phase, &d.amplitude}) {
    if (const auto* s = std::get_if<StepWaveform>(p)) return s;
  }
  return nullptr;
}

// First tick k with k / rate >= t, matching how the sampler places steps.
std::size_t first_tick_at(double t, double rate) {
  auto k = static_cast<std::size_t>(std::max(0.0, std::ceil(t * rate)));
  while (k > 0 && at_or_after(static_cast<double>(k - 1) / rate, t)) --k;
  while (!at_or_after(static_cast<double>(k) / rate, t)) ++k;
  return k;
}

void run(DdsCore& core, std::size_t ticks, std::vector<double>& out) {
  for (std::size_t k = 0; k < ticks; ++k) out.push_back(core.tick());
}

double scalar_rotation(const FramerotData& f) {
  if (const auto* v = std::get_if<double>(&f.rotation)) return *v;
  raise(ErrorCode::InvalidArgument,
        "frame rotation must be a scalar for simulation");
}

}  // namespace

double DdsCore::tick() {
  const std::uint32_t phase =
      accumulator_ + (static_cast<std::uint32_t>(words_.pow) << 16);
  accumulator_ += words_.ftw;
  return static_cast<double>(words_.asf) / 16383.0 *
         std::sin(kTwoPi * static_cast<double>(phase) / kTwo32);
}

SampledWaveform simulate_ad9910(const Ad9910Record& program,
                                const Ad9910Config& config) {
  SampledWaveform out;
  out.sample_rate = config.sysclk;
  const std::size_t total = tick_count(record_duration(program), config.sysclk);
  out.samples.reserve(total);
  DdsCore core;
  if (const auto* dc = std::get_if<ConstDC>(&program)) {
    out.samples.assign(total, dc->amplitude);
  } else if (const auto* tone = std::get_if<SingleTone>(&program)) {
    core.load(quantize_registers(*tone, config));
    run(core, total, out.samples);
  } else {
    const auto& d = std::get<DiscreteSine>(program);
    const StepWaveform* steps = stepped(d);
    const bool frequency_steps = std::holds_alternative<StepWaveform>(d.frequency);
    const std::size_t count = steps ? steps->steps.size() : 1;
    double start = 0.0;
    std::size_t begin = 0;
    for (std::size_t i = 0; i < count; ++i) {
      start += steps ? steps->steps[i].duration : d.duration;
      const std::size_t end =
          i + 1 == count ? total
                         : std::min(total, first_tick_at(start, config.sysclk));
      core.load(quantize(step_value(d.frequency, i), step_value(d.phase, i),
                         step_value(d.amplitude, i), config));
      if (i > 0 && frequency_steps && !d.phase_continuous) core.clear();
      if (end > begin) run(core, end - begin, out.samples);
      begin = std::max(begin, end);
    }
  }
  return out;
}

double param_at(const ParamData& p, double t, double duration) {
  if (const auto* v = std::get_if<double>(&p)) return *v;
  if (const auto* s = std::get_if<SplineKnots>(&p)) {
    return spline_over_duration(s->knots, duration, t);
  }
  const auto& steps = std::get<std::vector<double>>(p);
  return steps[discrete_index(steps.size(), duration, t)];
}

double param_integral(const ParamData& p, double t, double duration) {
  if (const auto* v = std::get_if<double>(&p)) return *v * t;
  if (const auto* s = std::get_if<SplineKnots>(&p)) {
    return spline_integral_over_duration(s->knots, duration, t);
  }
  return discrete_integral(std::get<std::vector<double>>(p), duration, t);
}

void RfsocChannelSimulator::play(const PulseDataRecord& record,
                                 std::vector<double>& out) {
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& f = record.frames[i];
    if (f.clear_accumulator) state_.frame[i] = 0.0;
    if (f.apply_at_start) state_.frame[i] += scalar_rotation(f);
  }
  for (std::size_t j = 0; j < 2; ++j) {
    if (!record.tones[j].sync_phase) state_.tone_phase[j] = 0.0;
  }
  const double d = record.duration;
  const std::size_t n = tick_count(d, config_.sample_rate);
  out.reserve(out.size() + n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / config_.sample_rate;
    double y = 0.0;
    for (std::size_t j = 0; j < 2; ++j) {
      const auto& tone = record.tones[j];
      const double amp = param_at(tone.amplitude, t, d);
      if (amp == 0.0) continue;
      double phase = state_.tone_phase[j] +
                     kTwoPi * param_integral(tone.frequency, t, d) +
                     param_at(tone.phase, t, d);
      if (tone.frame_index) {
        phase += state_.frame[static_cast<std::size_t>(*tone.frame_index)];
      }
      y += amp * std::sin(phase);
    }
    out.push_back(y);
  }
  for (std::size_t j = 0; j < 2; ++j) {
    state_.tone_phase[j] += kTwoPi * param_integral(record.tones[j].frequency,
                                                    static_cast<double>(n) /
                                                        config_.sample_rate,
                                                    d);
  }
  for (std::size_t i = 0; i < 2; ++i) {
    if (record.frames[i].apply_at_end) {
      state_.frame[i] += scalar_rotation(record.frames[i]);
    }
  }
}

SampledWaveform simulate_rfsoc_channel(std::span<const PulseDataRecord> records,
                                       const RfsocConfig& config) {
  SampledWaveform out;
  out.sample_rate = config.sample_rate;
  RfsocChannelSimulator sim(config);
  for (const auto& r : records) {
    if (r.channel_index != records.front().channel_index) {
      raise(ErrorCode::MixedChannel,
            "records target channels " +
                std::to_string(records.front().channel_index) + " and " +
                std::to_string(r.channel_index));
    }
    sim.play(r, out.samples);
  }
  return out;
}

double rms_compare(const SampledWaveform& a, const SampledWaveform& b) {
  if (a.size() != b.size() || a.sample_rate != b.sample_rate) {
    raise(ErrorCode::LengthMismatch,
          "waveforms have " + std::to_string(a.size()) + " and " +
              std::to_string(b.size()) + " samples");
  }
  if (a.size() == 0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.samples[i] - b.samples[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(a.size()));
}

std::string to_csv(const SampledWaveform& waveform) {
  std::string out = "time_seconds,value\n";
  char buf[64];
  for (std::size_t k = 0; k < waveform.size(); ++k) {
    const double t = static_cast<double>(k) / waveform.sample_rate;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t, waveform.samples[k]);
    out += buf;
  }
  return out;
}

}  // namespace pulsegraph
