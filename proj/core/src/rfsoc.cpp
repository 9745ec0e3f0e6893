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


#include "pulsegraph/rfsoc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pulsegraph/evaluate.hpp"
#include "pulsegraph/schedule.hpp"
#include "pulsegraph/transform.hpp"

namespace pulsegraph {

namespace {

// One tone of a base graph: a template around a Sine.
struct ToneSource {
  NodeId frequency;
  NodeId phase;
  std::optional<NodeId> amplitude;
  bool sync_phase = false;
};

struct BasePlan {
  std::vector<ToneSource> tones;
  NodeId duration;  // duration edge of the first Sine
};

bool equal_steps(const Graph& g, Evaluator& ev, NodeId seq_id) {
  const auto& seq = std::get<node::Sequence>(g.at(seq_id));
  const double first = ev.duration(seq.children.front());
  for (NodeId c : seq.children) {
    const double d = ev.duration(c);
    if (std::abs(d - first) > 1e-9 * std::max(std::abs(d), std::abs(first))) {
      return false;
    }
  }
  return true;
}

// Parameter shapes a base graph may carry into a Channel node.
bool reducible_param(const Graph& g, Evaluator& ev, NodeId id) {
  if (is_scalar_expression(g, id)) return true;
  if (const auto* k = g.get_if<node::Const>(id)) {
    return is_scalar_expression(g, k->value);
  }
  if (!is_step_function(g, id)) return false;
  const auto& seq = std::get<node::Sequence>(g.at(id));
  for (NodeId c : seq.children) {
    if (!is_scalar_expression(g, std::get<node::Const>(g.at(c)).value)) {
      return false;
    }
  }
  return equal_steps(g, ev, id);
}

std::optional<ToneSource> match_tone(const Graph& g, Evaluator& ev,
                                     NodeId root) {
  auto tmpl = match_sine_template(g, root);
  if (!tmpl) return std::nullopt;
  const auto& sine = std::get<node::Sine>(g.at(tmpl->sine));
  if (!reducible_param(g, ev, sine.frequency) ||
      !reducible_param(g, ev, sine.phase) ||
      (tmpl->amplitude && !reducible_param(g, ev, *tmpl->amplitude))) {
    return std::nullopt;
  }
  return ToneSource{sine.frequency, sine.phase, tmpl->amplitude,
                    detect_clock(g, root)};
}

std::optional<BasePlan> match_base(const Graph& g, Evaluator& ev, NodeId root) {
  BasePlan plan;
  if (const auto* s = g.get_if<node::Sum>(root)) {
    if (s->operands.size() != 2) return std::nullopt;
    for (NodeId o : s->operands) {
      auto tone = match_tone(g, ev, o);
      if (!tone) return std::nullopt;
      plan.tones.push_back(*tone);
    }
  } else if (auto tone = match_tone(g, ev, root)) {
    plan.tones.push_back(*tone);
  } else {
    return std::nullopt;
  }
  const NodeId first = match_sine_template(
                           g, g.kind(root) == NodeKind::Sum
                                  ? std::get<node::Sum>(g.at(root)).operands[0]
                                  : root)
                           ->sine;
  plan.duration = std::get<node::Sine>(g.at(first)).duration;
  return plan;
}

double finite(double v) {
  if (!std::isfinite(v)) {
    raise(ErrorCode::InvalidArgument, "parameter value is not finite");
  }
  return v;
}

// Base-graph parameter as record data; mirrors the nodes reduce_base_graph
// would build.
ParamData base_param(const Graph& g, Evaluator& ev, NodeId id) {
  if (const auto* k = g.get_if<node::Const>(id)) return finite(ev.scalar(k->value));
  if (const auto* seq = g.get_if<node::Sequence>(id)) {
    std::vector<double> steps;
    steps.reserve(seq->children.size());
    for (NodeId c : seq->children) {
      steps.push_back(finite(ev.scalar(std::get<node::Const>(g.at(c)).value)));
    }
    return steps;
  }
  return finite(ev.scalar(id));
}

// Channel-node parameter as record data; nullopt for foreign shapes.
std::optional<ParamData> channel_param(const Graph& g, Evaluator& ev,
                                       NodeId id) {
  if (const auto* s = g.get_if<node::Spline>(id)) {
    SplineKnots knots;
    knots.knots.reserve(s->knots.size());
    for (NodeId k : s->knots) {
      if (!is_scalar_expression(g, k)) return std::nullopt;
      knots.knots.push_back(finite(ev.scalar(k)));
    }
    return ParamData{std::move(knots)};
  }
  if (const auto* d = g.get_if<node::Discrete>(id)) {
    std::vector<double> steps;
    steps.reserve(d->steps.size());
    for (NodeId k : d->steps) {
      if (!is_scalar_expression(g, k)) return std::nullopt;
      steps.push_back(finite(ev.scalar(k)));
    }
    return ParamData{std::move(steps)};
  }
  if (is_scalar_expression(g, id)) return ParamData{finite(ev.scalar(id))};
  return std::nullopt;
}

std::optional<RfsocRecord> match_zero(MunchContext& ctx, NodeId root,
                                      const RfsocConfig&) {
  const Graph& g = ctx.graph;
  const auto* z = g.get_if<node::Zero>(root);
  if (z == nullptr) return std::nullopt;
  return ConstDC{0.0, ctx.eval.scalar(z->duration)};
}

std::optional<RfsocRecord> match_channel(MunchContext& ctx, NodeId root,
                                         const RfsocConfig&) {
  const Graph& g = ctx.graph;
  const auto* c = g.get_if<node::Channel>(root);
  if (c == nullptr) return std::nullopt;
  if (c->tones.size() != 2 || c->frames.size() != 2) {
    raise(ErrorCode::ArityError, "Channel needs exactly 2 tones and 2 frames");
  }
  Evaluator& ev = ctx.eval;
  ChannelData data;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto* tone = g.get_if<node::Tone>(c->tones[i]);
    const auto* frame = g.get_if<node::Framerot>(c->frames[i]);
    if (tone == nullptr || frame == nullptr) return std::nullopt;
    auto f = channel_param(g, ev, tone->frequency);
    auto p = channel_param(g, ev, tone->phase);
    auto a = channel_param(g, ev, tone->amplitude);
    auto r = channel_param(g, ev, frame->rotation);
    if (!f || !p || !a || !r) return std::nullopt;
    data.tones[i] = ToneData{std::move(*f), std::move(*p), std::move(*a),
                             tone->sync_phase, tone->frame_index,
                             tone->feedback_enable};
    data.frames[i] = FramerotData{std::move(*r), frame->apply_at_start,
                                  frame->apply_at_end,
                                  frame->clear_accumulator};
  }
  data.duration = finite(ev.scalar(c->duration));
  return data;
}

std::optional<RfsocRecord> match_base_graph(MunchContext& ctx, NodeId root,
                                            const RfsocConfig&) {
  const Graph& g = ctx.graph;
  Evaluator& ev = ctx.eval;
  auto plan = match_base(g, ev, root);
  if (!plan) return std::nullopt;
  ChannelData data;
  for (std::size_t i = 0; i < plan->tones.size(); ++i) {
    const auto& src = plan->tones[i];
    auto& tone = data.tones[i];
    tone.frequency = base_param(g, ev, src.frequency);
    tone.phase = base_param(g, ev, src.phase);
    tone.amplitude = src.amplitude ? base_param(g, ev, *src.amplitude) : 1.0;
    tone.sync_phase = src.sync_phase;
  }
  data.duration = finite(ev.scalar(plan->duration));
  return data;
}

NodeId reduce_param(Graph& g, NodeId id) {
  if (const auto* k = g.get_if<node::Const>(id)) return k->value;
  if (const auto* seq = g.get_if<node::Sequence>(id)) {
    std::vector<Arg> steps;
    steps.reserve(seq->children.size());
    for (NodeId c : seq->children) {
      steps.emplace_back(std::get<node::Const>(g.at(c)).value);
    }
    return g.discrete(std::move(steps));
  }
  return id;
}

void flatten(const Graph& g, Evaluator& ev, NodeId id,
             std::vector<NodeId>& out) {
  if (const auto* seq = g.get_if<node::Sequence>(id)) {
    for (NodeId c : seq->children) flatten(g, ev, c, out);
  } else if (ev.duration(id) > 0.0) {
    out.push_back(id);
  }
}

}  // namespace

const RfsocMuncher& rfsoc_muncher() {
  static const RfsocMuncher muncher({
      {"zero", match_zero},
      {"channel", match_channel},
      {"base-graph", match_base_graph},
  });
  return muncher;
}

NodeId reduce_base_graph(Graph& graph, NodeId root) {
  validate(graph, root);
  Evaluator ev(graph);
  auto plan = match_base(graph, ev, root);
  if (!plan) {
    throw NoMatchError(std::string(kind_name(graph.kind(root))),
                       {"base-graph"});
  }
  std::vector<NodeId> tones;
  for (const auto& src : plan->tones) {
    const NodeId f = reduce_param(graph, src.frequency);
    const NodeId p = reduce_param(graph, src.phase);
    const NodeId a = src.amplitude ? reduce_param(graph, *src.amplitude)
                                   : graph.num(1.0);
    tones.push_back(graph.tone(f, p, a, src.sync_phase));
  }
  if (tones.size() == 1) tones.push_back(graph.tone(0.0, 0.0, 0.0));
  const NodeId frame = graph.framerot(0.0);
  return graph.channel(tones[0], tones[1], frame, frame, plan->duration);
}

RfsocRecord munch_rfsoc_channel(const Graph& graph, NodeId root,
                                const RfsocConfig& config) {
  validate(graph, root);
  return rfsoc_muncher().munch(graph, root, config);
}

RfsocRecord transpile_rfsoc_channel(Graph& graph, NodeId root,
                                    const RfsocConfig& config) {
  validate(graph, root);
  try {
    root = normalize(graph, root);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyResult) throw;
    return ConstDC{0.0, 0.0};
  }
  return munch_rfsoc_channel(graph, root, config);
}

PulseDataRecord to_pulse_record(const ChannelData& data, int channel_index,
                                const RfsocConfig& config) {
  if (channel_index < 0 ||
      static_cast<std::size_t>(channel_index) >= config.channel_count) {
    raise(ErrorCode::ChannelIndexOutOfRange,
          "channel index " + std::to_string(channel_index) + " not below " +
              std::to_string(config.channel_count));
  }
  return PulseDataRecord{channel_index, data.duration, data.tones, data.frames};
}

PulseDataRecord silent_record(double duration, int channel_index,
                              const RfsocConfig& config) {
  ChannelData data;
  data.duration = duration;
  return to_pulse_record(data, channel_index, config);
}

PulseDataRecord to_pulse_record(const RfsocRecord& record, int channel_index,
                                const RfsocConfig& config) {
  if (const auto* dc = std::get_if<ConstDC>(&record)) {
    return silent_record(dc->duration, channel_index, config);
  }
  return to_pulse_record(std::get<ChannelData>(record), channel_index, config);
}

ChannelData to_channel_data(const PulseDataRecord& record) {
  return ChannelData{record.tones, record.frames, record.duration};
}

RfsocProgram transpile_schedule_rfsoc(const Schedule& schedule,
                                      const ChannelMap& channel_map,
                                      const RfsocConfig& config) {
  RfsocProgram out;
  const Graph& g = schedule.graph();
  MunchContext ctx(g);
  std::vector<NodeId> segments;
  for (const auto& ch : schedule.channels()) {
    auto it = channel_map.find(ch);
    if (it == channel_map.end()) {
      raise(ErrorCode::UnmappedChannel,
            "channel '" + ch + "' has no channel index");
    }
    auto& records = out[ch];
    try {
      segments.clear();
      flatten(g, ctx.eval, schedule.root(ch), segments);
      records.reserve(segments.size());
      for (NodeId s : segments) {
        records.push_back(to_pulse_record(
            rfsoc_muncher().munch(ctx, s, config), it->second, config));
      }
    } catch (Error& e) {
      e.add_context("channel '" + ch + "'");
      throw;
    }
  }
  return out;
}

}  // namespace pulsegraph
