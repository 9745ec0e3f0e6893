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


#include "pulsegraph/direct.hpp"

#include <algorithm>
#include <set>
#include <variant>

#include "pulsegraph/error.hpp"

namespace pulsegraph::direct {

struct detail::BuilderContext {
  struct Play {
    std::string channel;
    Pulse pulse;
  };
  using Item = std::variant<Play, std::unique_ptr<BuilderContext>>;

  bool parallel = false;
  std::vector<Item> items;
  std::set<std::string> channels;
};

namespace {

using Context = detail::BuilderContext;

struct Block {
  std::map<std::string, std::vector<Pulse>> pulses;
  double duration = 0.0;
};

Block lower(const std::vector<Context::Item>& items, bool parallel) {
  std::vector<Block> blocks;
  blocks.reserve(items.size());
  for (const auto& item : items) {
    if (const auto* p = std::get_if<Context::Play>(&item)) {
      Block b;
      b.pulses[p->channel].push_back(p->pulse);
      b.duration = p->pulse.duration;
      blocks.push_back(std::move(b));
    } else {
      const auto& ctx = *std::get<std::unique_ptr<Context>>(item);
      blocks.push_back(lower(ctx.items, ctx.parallel));
    }
  }
  Block out;
  if (parallel) {
    for (const auto& b : blocks) out.duration = std::max(out.duration, b.duration);
    for (auto& b : blocks) {
      const double pad = out.duration - b.duration;
      for (auto& [ch, pulses] : b.pulses) {
        auto& dst = out.pulses[ch];
        dst.insert(dst.end(), pulses.begin(), pulses.end());
        if (pad > 0.0) dst.push_back(Pulse::silent(pad));
      }
    }
    return out;
  }
  std::set<std::string> channels;
  for (const auto& b : blocks) {
    for (const auto& [ch, pulses] : b.pulses) channels.insert(ch);
  }
  for (auto& b : blocks) {
    for (const auto& ch : channels) {
      auto& dst = out.pulses[ch];
      if (auto it = b.pulses.find(ch); it != b.pulses.end()) {
        dst.insert(dst.end(), it->second.begin(), it->second.end());
      } else if (b.duration > 0.0) {
        dst.push_back(Pulse::silent(b.duration));
      }
    }
    out.duration += b.duration;
  }
  return out;
}

}  // namespace

Pulse Pulse::silent(double duration) {
  Pulse p;
  p.duration = duration;
  return p;
}

ScheduleBuilder::ScheduleBuilder(std::vector<std::string> channels)
    : declared_(std::move(channels)) {}
ScheduleBuilder::~ScheduleBuilder() = default;
ScheduleBuilder::ScheduleBuilder(ScheduleBuilder&&) noexcept = default;
ScheduleBuilder& ScheduleBuilder::operator=(ScheduleBuilder&&) noexcept =
    default;

void ScheduleBuilder::open_sequential() {
  stack_.push_back(std::make_unique<Context>());
}

void ScheduleBuilder::open_parallel() {
  auto ctx = std::make_unique<Context>();
  ctx->parallel = true;
  stack_.push_back(std::move(ctx));
}

void ScheduleBuilder::close() {
  if (stack_.empty()) raise(ErrorCode::UnbalancedClose, "no open context");
  auto ctx = std::move(stack_.back());
  stack_.pop_back();
  if (stack_.empty()) {
    closed_.push_back(std::move(ctx));
    return;
  }
  auto& parent = *stack_.back();
  for (const auto& ch : ctx->channels) {
    if (!parent.channels.insert(ch).second && parent.parallel) {
      raise(ErrorCode::DuplicateChannelInParallel,
            "channel '" + ch + "' appears twice in a parallel context");
    }
  }
  parent.items.emplace_back(std::move(ctx));
}

void ScheduleBuilder::play(const std::string& channel, const Pulse& pulse) {
  if (stack_.empty()) {
    raise(ErrorCode::NoOpenContext, "play on '" + channel + "' outside a context");
  }
  if (!(pulse.duration >= 0.0)) {
    raise(ErrorCode::NegativeDuration, "pulse duration is negative");
  }
  auto& top = *stack_.back();
  if (!top.channels.insert(channel).second && top.parallel) {
    raise(ErrorCode::DuplicateChannelInParallel,
          "channel '" + channel + "' appears twice in a parallel context");
  }
  if (std::find(played_.begin(), played_.end(), channel) == played_.end()) {
    played_.push_back(channel);
  }
  top.items.emplace_back(Context::Play{channel, pulse});
}

Schedule ScheduleBuilder::finalize() {
  if (!stack_.empty()) {
    raise(ErrorCode::UnbalancedClose,
          std::to_string(stack_.size()) + " context(s) left open");
  }
  std::vector<Context::Item> top;
  for (auto& ctx : closed_) top.emplace_back(std::move(ctx));
  closed_.clear();
  Block block = lower(top, false);

  Schedule out;
  out.channels = declared_;
  for (const auto& c : played_) {
    if (std::find(out.channels.begin(), out.channels.end(), c) ==
        out.channels.end()) {
      out.channels.push_back(c);
    }
  }
  out.total_duration = block.duration;
  for (const auto& ch : out.channels) {
    auto& dst = out.pulses[ch];
    if (auto it = block.pulses.find(ch); it != block.pulses.end()) {
      dst = std::move(it->second);
    }
    if (dst.empty()) dst.push_back(Pulse::silent(block.duration));
  }
  return out;
}

Schedule tile(const Schedule& fragment, std::size_t n) {
  if (n == 0) raise(ErrorCode::InvalidArgument, "tile count must be positive");
  Schedule out;
  out.channels = fragment.channels;
  for (const auto& [ch, pulses] : fragment.pulses) {
    auto& dst = out.pulses[ch];
    dst.reserve(pulses.size() * n);
    for (std::size_t i = 0; i < n; ++i) {
      dst.insert(dst.end(), pulses.begin(), pulses.end());
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.total_duration += fragment.total_duration;
  return out;
}

RfsocProgram transpile(const Schedule& schedule, const ChannelMap& channel_map,
                       const RfsocConfig& config) {
  RfsocProgram out;
  for (const auto& ch : schedule.channels) {
    auto it = channel_map.find(ch);
    if (it == channel_map.end()) {
      raise(ErrorCode::UnmappedChannel,
            "channel '" + ch + "' has no channel index");
    }
    auto& records = out[ch];
    const auto& pulses = schedule.pulses.at(ch);
    records.reserve(pulses.size());
    for (const auto& p : pulses) {
      if (!(p.duration > 0.0)) continue;
      ChannelData data;
      for (std::size_t i = 0; i < 2; ++i) {
        const auto& t = p.tones[i];
        data.tones[i] = ToneData{t.frequency, t.phase, t.amplitude,
                                 t.sync_phase, t.frame_index,
                                 t.feedback_enable};
        const auto& f = p.frames[i];
        data.frames[i] = FramerotData{f.rotation, f.apply_at_start,
                                      f.apply_at_end, f.clear_accumulator};
      }
      data.duration = p.duration;
      records.push_back(to_pulse_record(data, it->second, config));
    }
  }
  return out;
}

}  // namespace pulsegraph::direct
