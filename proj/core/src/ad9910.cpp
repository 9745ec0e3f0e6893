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


#include "pulsegraph/ad9910.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pulsegraph/evaluate.hpp"
#include "pulsegraph/schedule.hpp"
#include "pulsegraph/transform.hpp"

namespace pulsegraph {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool durations_agree(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)) + 1e-18;
}

void check_frequency(double f, const Ad9910Config& config) {
  if (!(f >= 0.0 && f <= config.max_frequency)) {
    raise(ErrorCode::FrequencyOutOfRange,
          "frequency " + std::to_string(f) + " Hz outside [0, " +
              std::to_string(config.max_frequency) + "]");
  }
}

void check_amplitude(double a) {
  if (!(std::abs(a) <= 1.0)) {
    raise(ErrorCode::AmplitudeOutOfRange,
          "amplitude " + std::to_string(a) + " outside [-1, 1]");
  }
}

template <class F>
void for_each_value(const StepParam& p, F&& f) {
  if (const auto* v = std::get_if<double>(&p)) {
    f(*v);
  } else {
    for (const auto& s : std::get<StepWaveform>(p).steps) f(s.amplitude);
  }
}

// Converts one template parameter. nullopt means the shape does not fit.
std::optional<StepParam> leaf_param(const Graph& g, Evaluator& ev, NodeId id,
                                    double duration,
                                    const Ad9910Config& config) {
  if (is_step_function(g, id)) {
    const auto& seq = std::get<node::Sequence>(g.at(id));
    StepWaveform steps;
    steps.steps.reserve(seq.children.size());
    for (NodeId c : seq.children) {
      const auto& k = std::get<node::Const>(g.at(c));
      if (!is_scalar_expression(g, k.value)) return std::nullopt;
      steps.steps.push_back({ev.scalar(k.value), ev.scalar(k.duration)});
    }
    if (steps.steps.size() > config.ram_slots) {
      raise(ErrorCode::TooManySteps,
            std::to_string(steps.steps.size()) + " steps exceed " +
                std::to_string(config.ram_slots) + " RAM slots");
    }
    if (!durations_agree(steps.duration(), duration)) {
      raise(ErrorCode::MixedDuration,
            "step function spans " + std::to_string(steps.duration()) +
                " s but the pulse spans " + std::to_string(duration) + " s");
    }
    if (steps.steps.size() == 1) return StepParam{steps.steps.front().amplitude};
    return StepParam{std::move(steps)};
  }
  if (is_scalar_expression(g, id)) return StepParam{ev.scalar(id)};
  if (const auto* k = g.get_if<node::Const>(id)) {
    if (!is_scalar_expression(g, k->value)) return std::nullopt;
    if (!durations_agree(ev.scalar(k->duration), duration)) {
      raise(ErrorCode::MixedDuration, "constant parameter spans a different "
                                      "duration than the pulse");
    }
    return StepParam{ev.scalar(k->value)};
  }
  return std::nullopt;
}

std::optional<Ad9910Record> match_zero(MunchContext& ctx, NodeId root,
                                       const Ad9910Config&) {
  const Graph& g = ctx.graph;
  const auto* z = g.get_if<node::Zero>(root);
  if (z == nullptr) return std::nullopt;
  return ConstDC{0.0, ctx.eval.scalar(z->duration)};
}

std::optional<Ad9910Record> match_template(MunchContext& ctx, NodeId root,
                                           const Ad9910Config& config) {
  const Graph& g = ctx.graph;
  auto tmpl = match_sine_template(g, root);
  if (!tmpl) return std::nullopt;
  Evaluator& ev = ctx.eval;
  const auto& sine = std::get<node::Sine>(g.at(tmpl->sine));
  const double duration = ev.scalar(sine.duration);

  auto frequency = leaf_param(g, ev, sine.frequency, duration, config);
  if (!frequency) return std::nullopt;
  auto phase = leaf_param(g, ev, sine.phase, duration, config);
  if (!phase) return std::nullopt;
  std::optional<StepParam> amplitude = StepParam{1.0};
  if (tmpl->amplitude) {
    amplitude = leaf_param(g, ev, *tmpl->amplitude, duration, config);
    if (!amplitude) return std::nullopt;
  }

  for_each_value(*frequency, [&](double f) { check_frequency(f, config); });
  for_each_value(*amplitude, check_amplitude);

  const int stepped = std::holds_alternative<StepWaveform>(*frequency) +
                      std::holds_alternative<StepWaveform>(*phase) +
                      std::holds_alternative<StepWaveform>(*amplitude);
  const bool continuous = detect_clock(g, root);
  if (stepped > 1) {
    raise(ErrorCode::MultiParamModulation,
          "at most one parameter may be a step function");
  }
  if (stepped == 0) {
    return SingleTone{std::get<double>(*frequency), std::get<double>(*phase),
                      std::get<double>(*amplitude), duration, continuous};
  }
  return DiscreteSine{std::move(*frequency), std::move(*phase),
                      std::move(*amplitude), duration, continuous};
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

double StepWaveform::duration() const {
  double d = 0.0;
  for (const auto& s : steps) d += s.duration;
  return d;
}

std::uint32_t frequency_word(double frequency, const Ad9910Config& config) {
  check_frequency(frequency, config);
  const double scaled = std::round(std::ldexp(frequency / config.sysclk, 32));
  return static_cast<std::uint32_t>(
      static_cast<std::uint64_t>(scaled) & 0xFFFFFFFFull);
}

std::uint16_t phase_word(double phase) {
  double turns = std::fmod(phase, kTwoPi);
  if (turns < 0.0) turns += kTwoPi;
  const double scaled = std::round(turns / kTwoPi * 65536.0);
  return static_cast<std::uint16_t>(static_cast<std::uint32_t>(scaled) & 0xFFFFu);
}

std::uint16_t amplitude_word(double amplitude) {
  check_amplitude(amplitude);
  return static_cast<std::uint16_t>(std::round(std::abs(amplitude) * 16383.0));
}

RegisterWords quantize(double frequency, double phase, double amplitude,
                       const Ad9910Config& config) {
  const double folded = amplitude < 0.0 ? phase + std::numbers::pi : phase;
  return {frequency_word(frequency, config), phase_word(folded),
          amplitude_word(amplitude)};
}

RegisterWords quantize_registers(const SingleTone& tone,
                                 const Ad9910Config& config) {
  return quantize(tone.frequency, tone.phase, tone.amplitude, config);
}

std::optional<SineTemplate> match_sine_template(const Graph& graph,
                                                NodeId root) {
  auto params_ok = [&](NodeId sine) {
    const auto& s = std::get<node::Sine>(graph.at(sine));
    auto ok = [&](NodeId p) {
      return is_scalar_expression(graph, p) || is_step_function(graph, p) ||
             graph.kind(p) == NodeKind::Const;
    };
    return ok(s.frequency) && ok(s.phase);
  };
  if (graph.kind(root) == NodeKind::Sine) {
    if (!params_ok(root)) return std::nullopt;
    return SineTemplate{std::nullopt, root};
  }
  const auto* p = graph.get_if<node::Product>(root);
  if (p == nullptr || p->operands.size() != 2) return std::nullopt;
  for (int i = 0; i < 2; ++i) {
    const NodeId sine = p->operands[static_cast<std::size_t>(i)];
    const NodeId amp = p->operands[static_cast<std::size_t>(1 - i)];
    if (graph.kind(sine) != NodeKind::Sine || !params_ok(sine)) continue;
    if (is_scalar_expression(graph, amp) || is_step_function(graph, amp) ||
        graph.kind(amp) == NodeKind::Const) {
      return SineTemplate{amp, sine};
    }
  }
  return std::nullopt;
}

bool is_step_function(const Graph& graph, NodeId id) {
  const auto* seq = graph.get_if<node::Sequence>(id);
  return seq != nullptr && !seq->children.empty() &&
         std::all_of(seq->children.begin(), seq->children.end(),
                     [&](NodeId c) { return graph.kind(c) == NodeKind::Const; });
}

bool is_scalar_expression(const Graph& graph, NodeId id) {
  const auto& n = graph.at(id);
  switch (kind_of(n)) {
    case NodeKind::Num:
    case NodeKind::Var:
      return true;
    case NodeKind::Sum:
    case NodeKind::Product:
    case NodeKind::Max: {
      bool ok = true;
      for_each_edge(n, [&](NodeId e) { ok = ok && is_scalar_expression(graph, e); });
      return ok;
    }
    default:
      return false;
  }
}

const Ad9910Muncher& ad9910_muncher() {
  static const Ad9910Muncher muncher({
      {"zero", match_zero},
      {"template", match_template},
  });
  return muncher;
}

Ad9910Record munch_ad9910(const Graph& graph, NodeId root,
                          const Ad9910Config& config) {
  validate(graph, root);
  return ad9910_muncher().munch(graph, root, config);
}

Ad9910Record transpile_ad9910(Graph& graph, NodeId root,
                              const Ad9910Config& config) {
  validate(graph, root);
  try {
    root = normalize(graph, root);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyResult) throw;
    return ConstDC{0.0, 0.0};
  }
  return munch_ad9910(graph, root, config);
}

double record_duration(const Ad9910Record& record) {
  return std::visit([](const auto& r) { return r.duration; }, record);
}

std::map<std::string, std::vector<Ad9910Record>> transpile_schedule_ad9910(
    const Schedule& schedule, const Ad9910Config& config) {
  std::map<std::string, std::vector<Ad9910Record>> out;
  const Graph& g = schedule.graph();
  MunchContext ctx(g);
  for (const auto& ch : schedule.channels()) {
    auto& records = out[ch];
    try {
      std::vector<NodeId> segments;
      flatten(g, ctx.eval, schedule.root(ch), segments);
      for (NodeId s : segments) {
        records.push_back(ad9910_muncher().munch(ctx, s, config));
      }
    } catch (Error& e) {
      e.add_context("channel '" + ch + "'");
      throw;
    }
  }
  return out;
}

}  // namespace pulsegraph
