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

#include "pulsegraph/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "pulsegraph/spline.hpp"

namespace pulsegraph {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool durations_agree(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)) + 1e-18;
}

std::string kind_str(const PulseNode& n) {
  return std::string(kind_name(kind_of(n)));
}

// Duration edge of a leaf waveform, if any.
std::optional<NodeId> duration_edge(const PulseNode& n) {
  return std::visit(
      [](const auto& x) -> std::optional<NodeId> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, node::Const> ||
                      std::is_same_v<T, node::Zero> ||
                      std::is_same_v<T, node::Sine> ||
                      std::is_same_v<T, node::Cosine> ||
                      std::is_same_v<T, node::Poly> ||
                      std::is_same_v<T, node::Gauss> ||
                      std::is_same_v<T, node::Channel>) {
          return x.duration;
        } else {
          return std::nullopt;
        }
      },
      n);
}

}  // namespace

Evaluator::Evaluator(const Graph& graph) : graph_(graph) {
  const std::size_t n = graph.size();
  durations_.reserve(n);
  scalars_.reserve(n);
  waveform_.reserve(n);
  var_free_.reserve(n);
  static_.reserve(n);
  literal_.reserve(n);
}

bool Evaluator::is_waveform(NodeId id) {
  if (const auto* hit = waveform_.find(id)) return *hit;
  const auto& n = graph_.at(id);
  bool result = is_waveform_kind(kind_of(n));
  if (const auto* s = std::get_if<node::Sum>(&n)) {
    result = std::any_of(s->operands.begin(), s->operands.end(),
                         [&](NodeId o) { return is_waveform(o); });
  } else if (const auto* p = std::get_if<node::Product>(&n)) {
    result = std::any_of(p->operands.begin(), p->operands.end(),
                         [&](NodeId o) { return is_waveform(o); });
  }
  waveform_.store(id, result);
  return result;
}

double Evaluator::duration(NodeId id) {
  if (const auto* hit = durations_.find(id)) return *hit;
  const auto& n = graph_.at(id);
  double result = 0.0;
  if (auto edge = duration_edge(n)) {
    result = scalar(*edge);
  } else if (const auto* seq = std::get_if<node::Sequence>(&n)) {
    for (NodeId c : seq->children) result += duration(c);
  } else if (std::holds_alternative<node::Sum>(n) ||
             std::holds_alternative<node::Product>(n)) {
    const auto& ops = std::holds_alternative<node::Sum>(n)
                          ? std::get<node::Sum>(n).operands
                          : std::get<node::Product>(n).operands;
    std::optional<double> common;
    for (NodeId o : ops) {
      if (!is_waveform(o)) continue;
      const double d = duration(o);
      if (!common) {
        common = d;
      } else if (!durations_agree(*common, d)) {
        raise(ErrorCode::MixedDuration,
              kind_str(n) + " operands have durations " +
                  std::to_string(*common) + " and " + std::to_string(d));
      }
    }
    result = common.value_or(0.0);
  }
  durations_.store(id, result);
  return result;
}

double Evaluator::scalar(NodeId id) {
  if (const auto* num = graph_.get_if<node::Num>(id)) return num->value;
  if (const auto* hit = scalars_.find(id)) return *hit;
  const double v = value(id, 0.0, 0.0);
  scalars_.store(id, v);
  return v;
}

const std::vector<double>& Evaluator::starts(NodeId seq,
                                              const node::Sequence& s) {
  if (auto it = starts_.find(seq.index); it != starts_.end()) {
    return it->second;
  }
  std::vector<double> st(s.children.size() + 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.children.size(); ++i) {
    st[i] = acc;
    acc += duration(s.children[i]);
  }
  st.back() = acc;
  return starts_.emplace(seq.index, std::move(st)).first->second;
}

Evaluator::SeqLookup Evaluator::locate(NodeId seq, const node::Sequence& s,
                                       double t) {
  if (s.children.empty()) {
    raise(ErrorCode::BadArity, "Sequence has no children");
  }
  const auto& st = starts(seq, s);
  const auto first = st.begin();
  const auto last = st.end() - 1;  // exclude the total
  auto it = std::partition_point(first, last,
                                 [t](double start) { return at_or_after(t, start); });
  std::size_t idx = it == first ? 0 : static_cast<std::size_t>(it - first) - 1;
  return {idx, std::max(0.0, t - st[idx])};
}

double Evaluator::value(NodeId id, double t, double global_t) {
  const auto& n = graph_.at(id);
  return std::visit(
      [&](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, node::Num>) {
          return x.value;
        } else if constexpr (std::is_same_v<T, node::Var>) {
          if (!x.bound) {
            raise(ErrorCode::UnboundVar, "variable '" + x.name + "' is unbound");
          }
          return *x.bound;
        } else if constexpr (std::is_same_v<T, node::Const>) {
          return value(x.value, t, global_t);
        } else if constexpr (std::is_same_v<T, node::Zero>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, node::Sine>) {
          return std::sin(sine_phase(x, t, global_t));
        } else if constexpr (std::is_same_v<T, node::Cosine>) {
          node::Sine as_sine{x.frequency, x.phase, x.duration, x.clock};
          return std::sin(sine_phase(as_sine, t, global_t) +
                          std::numbers::pi / 2.0);
        } else if constexpr (std::is_same_v<T, node::Poly>) {
          double acc = 0.0;
          for (auto it = x.coefficients.rbegin(); it != x.coefficients.rend();
               ++it) {
            acc = acc * t + value(*it, t, global_t);
          }
          return acc;
        } else if constexpr (std::is_same_v<T, node::Gauss>) {
          const double a = value(x.amplitude, t, global_t);
          const double mean = scalar(x.mean);
          const double sigma = scalar(x.sigma);
          const double z = (t - mean) / sigma;
          return a * std::exp(-0.5 * z * z);
        } else if constexpr (std::is_same_v<T, node::Sum>) {
          // Literal operands combine first so that folding them is exact.
          double acc = 0.0;
          for (NodeId o : x.operands) {
            if (literal(o)) acc += value(o, t, global_t);
          }
          for (NodeId o : x.operands) {
            if (!literal(o)) acc += value(o, t, global_t);
          }
          return acc;
        } else if constexpr (std::is_same_v<T, node::Product>) {
          double acc = 1.0;
          for (NodeId o : x.operands) {
            if (literal(o)) acc *= value(o, t, global_t);
          }
          for (NodeId o : x.operands) {
            if (!literal(o)) acc *= value(o, t, global_t);
          }
          return acc;
        } else if constexpr (std::is_same_v<T, node::Max>) {
          double acc = -std::numeric_limits<double>::infinity();
          for (NodeId o : x.operands) acc = std::max(acc, value(o, t, global_t));
          return acc;
        } else if constexpr (std::is_same_v<T, node::Sequence>) {
          const auto hit = locate(id, x, t);
          return value(x.children[hit.index], hit.local_t, global_t);
        } else if constexpr (std::is_same_v<T, node::Clock>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, node::Channel>) {
          return channel_value(x, t, global_t);
        } else {
          raise(ErrorCode::InvalidArgument,
                kind_str(n) + " node has no standalone value; it needs an "
                              "owning pulse");
        }
      },
      n);
}

double Evaluator::sine_phase(const node::Sine& s, double t, double global_t) {
  double cycles = 0.0;
  if (s.clock) {
    // Phase referenced to the global timeline: the oscillator is assumed to
    // have run at its initial frequency before this node started.
    const double offset = global_t - t;
    cycles = integral(s.frequency, t);
    if (offset != 0.0) cycles += value(s.frequency, 0.0, offset) * offset;
  } else {
    cycles = value(s.frequency, t, global_t) * segment_time(s.frequency, t);
  }
  return kTwoPi * cycles + value(s.phase, t, global_t);
}

double Evaluator::integral(NodeId id, double t) {
  const auto& n = graph_.at(id);
  switch (kind_of(n)) {
    case NodeKind::Num:
    case NodeKind::Var:
    case NodeKind::Max:
      return scalar(id) * t;
    case NodeKind::Const:
      return scalar(std::get<node::Const>(n).value) * t;
    case NodeKind::Zero:
      return 0.0;
    case NodeKind::Poly: {
      const auto& p = std::get<node::Poly>(n);
      double acc = 0.0;
      double tp = t;
      for (std::size_t i = 0; i < p.coefficients.size(); ++i) {
        acc += scalar(p.coefficients[i]) * tp / static_cast<double>(i + 1);
        tp *= t;
      }
      return acc;
    }
    case NodeKind::Sequence: {
      const auto& s = std::get<node::Sequence>(n);
      const auto hit = locate(id, s, t);
      double acc = 0.0;
      for (std::size_t i = 0; i < hit.index; ++i) {
        acc += integral(s.children[i], duration(s.children[i]));
      }
      return acc + integral(s.children[hit.index], hit.local_t);
    }
    case NodeKind::Sum: {
      double acc = 0.0;
      for (NodeId o : std::get<node::Sum>(n).operands) acc += integral(o, t);
      return acc;
    }
    case NodeKind::Product: {
      const auto& ops = std::get<node::Product>(n).operands;
      double factor = 1.0;
      std::optional<NodeId> wave;
      for (NodeId o : ops) {
        if (is_waveform(o)) {
          if (wave) {
            raise(ErrorCode::InvalidArgument,
                  "cannot integrate a product of two waveforms");
          }
          wave = o;
        } else {
          factor *= scalar(o);
        }
      }
      return factor * (wave ? integral(*wave, t) : t);
    }
    default:
      raise(ErrorCode::InvalidArgument,
            "no closed-form integral for a " + kind_str(n) + " frequency");
  }
}

double Evaluator::segment_time(NodeId id, double t) {
  if (const auto* s = graph_.get_if<node::Sequence>(id)) {
    const auto hit = locate(id, *s, t);
    return segment_time(s->children[hit.index], hit.local_t);
  }
  return t;
}

bool Evaluator::literal(NodeId id) {
  if (const auto* hit = literal_.find(id)) return *hit;
  const auto& n = graph_.at(id);
  bool result = std::holds_alternative<node::Num>(n);
  const std::vector<NodeId>* ops = nullptr;
  if (const auto* s = std::get_if<node::Sum>(&n)) ops = &s->operands;
  if (const auto* p = std::get_if<node::Product>(&n)) ops = &p->operands;
  if (const auto* m = std::get_if<node::Max>(&n)) ops = &m->operands;
  if (ops != nullptr && !ops->empty()) {
    result = std::all_of(ops->begin(), ops->end(), [&](NodeId o) { return literal(o); });
  }
  literal_.store(id, result);
  return result;
}

bool Evaluator::var_free(NodeId id) {
  if (const auto* hit = var_free_.find(id)) return *hit;
  const auto& n = graph_.at(id);
  bool result = !std::holds_alternative<node::Var>(n);
  if (result) {
    for_each_edge(n, [&](NodeId e) {
      if (result && !var_free(e)) result = false;
    });
  }
  var_free_.store(id, result);
  return result;
}

bool Evaluator::static_duration(NodeId id) {
  if (const auto* hit = static_.find(id)) return *hit;
  const auto& n = graph_.at(id);
  bool result = true;
  if (auto edge = duration_edge(n)) {
    result = var_free(*edge);
  } else if (const auto* seq = std::get_if<node::Sequence>(&n)) {
    for (NodeId c : seq->children) result = result && static_duration(c);
  } else if (std::holds_alternative<node::Sum>(n) ||
             std::holds_alternative<node::Product>(n)) {
    const auto& ops = std::holds_alternative<node::Sum>(n)
                          ? std::get<node::Sum>(n).operands
                          : std::get<node::Product>(n).operands;
    for (NodeId o : ops) {
      if (is_waveform(o)) result = result && static_duration(o);
    }
  }
  static_.store(id, result);
  return result;
}

double Evaluator::param_value(NodeId id, double t, double global_t,
                              double owner_duration) {
  const auto& n = graph_.at(id);
  if (const auto* sp = std::get_if<node::Spline>(&n)) {
    std::vector<double> knots;
    knots.reserve(sp->knots.size());
    for (NodeId k : sp->knots) knots.push_back(scalar(k));
    return spline_over_duration(knots, owner_duration, t);
  }
  if (const auto* d = std::get_if<node::Discrete>(&n)) {
    if (d->steps.empty()) raise(ErrorCode::BadArity, "Discrete has no steps");
    return scalar(d->steps[discrete_index(d->steps.size(), owner_duration, t)]);
  }
  return value(id, t, global_t);
}

double Evaluator::param_integral(NodeId id, double t, double owner_duration) {
  const auto& n = graph_.at(id);
  if (const auto* sp = std::get_if<node::Spline>(&n)) {
    std::vector<double> knots;
    knots.reserve(sp->knots.size());
    for (NodeId k : sp->knots) knots.push_back(scalar(k));
    return spline_integral_over_duration(knots, owner_duration, t);
  }
  if (const auto* d = std::get_if<node::Discrete>(&n)) {
    if (d->steps.empty()) raise(ErrorCode::BadArity, "Discrete has no steps");
    std::vector<double> steps;
    steps.reserve(d->steps.size());
    for (NodeId k : d->steps) steps.push_back(scalar(k));
    return discrete_integral(steps, owner_duration, t);
  }
  return integral(id, t);
}

double Evaluator::channel_value(const node::Channel& c, double t,
                                double global_t) {
  if (c.tones.size() != 2 || c.frames.size() != 2) {
    raise(ErrorCode::ArityError, "Channel needs exactly 2 tones and 2 frames");
  }
  const double dur = scalar(c.duration);
  // Frame offsets as seen from a freshly cleared channel.
  double frame_offset[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto* fr = graph_.get_if<node::Framerot>(c.frames[i]);
    if (fr == nullptr) {
      raise(ErrorCode::InvalidArgument, "Channel frame is not a Framerot");
    }
    if (fr->apply_at_start) frame_offset[i] = scalar(fr->rotation);
  }
  double out = 0.0;
  for (NodeId tone_id : c.tones) {
    const auto* tone = graph_.get_if<node::Tone>(tone_id);
    if (tone == nullptr) {
      raise(ErrorCode::InvalidArgument, "Channel tone is not a Tone");
    }
    const double amp = param_value(tone->amplitude, t, global_t, dur);
    if (amp == 0.0) continue;
    double cycles = param_integral(tone->frequency, t, dur);
    const double offset = global_t - t;
    if (tone->sync_phase && offset != 0.0) {
      cycles += param_value(tone->frequency, 0.0, offset, dur) * offset;
    }
    double phase = kTwoPi * cycles + param_value(tone->phase, t, global_t, dur);
    if (tone->frame_index) {
      phase += frame_offset[static_cast<std::size_t>(*tone->frame_index)];
    }
    out += amp * std::sin(phase);
  }
  return out;
}

double duration(const Graph& graph, NodeId root) {
  Evaluator ev(graph);
  return ev.duration(root);
}

bool is_waveform(const Graph& graph, NodeId id) {
  Evaluator ev(graph);
  return ev.is_waveform(id);
}

namespace {

void check_arity(const PulseNode& n) {
  auto fail = [&](const std::string& what) {
    raise(ErrorCode::BadArity, kind_str(n) + " " + what);
  };
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, node::Sum> ||
                      std::is_same_v<T, node::Product> ||
                      std::is_same_v<T, node::Max>) {
          if (x.operands.size() < 2) fail("needs at least 2 operands");
        } else if constexpr (std::is_same_v<T, node::Sequence>) {
          if (x.children.empty()) fail("needs at least 1 child");
        } else if constexpr (std::is_same_v<T, node::Poly>) {
          if (x.coefficients.empty()) fail("needs at least 1 coefficient");
        } else if constexpr (std::is_same_v<T, node::Spline>) {
          if (x.knots.size() < 2) fail("needs at least 2 knots");
        } else if constexpr (std::is_same_v<T, node::Discrete>) {
          if (x.steps.empty()) fail("needs at least 1 step");
        } else if constexpr (std::is_same_v<T, node::Channel>) {
          if (x.tones.size() != 2 || x.frames.size() != 2) {
            raise(ErrorCode::ArityError,
                  "Channel needs exactly 2 tones and 2 frames");
          }
        } else if constexpr (std::is_same_v<T, node::Tone>) {
          if (x.frame_index && (*x.frame_index < 0 || *x.frame_index > 1)) {
            fail("frame index must be 0 or 1");
          }
        }
      },
      n);
}

}  // namespace

void validate(const Graph& graph, NodeId root) {
  if (!graph.contains(root)) {
    raise(ErrorCode::DanglingRef, "root is not in the graph");
  }
  // Iterative three-colour DFS: 0 = unseen, 1 = on stack, 2 = done.
  std::vector<char> colour(graph.size(), 0);
  std::vector<std::pair<NodeId, std::vector<NodeId>>> stack;
  std::vector<NodeId> reachable;

  auto children = [&](NodeId id) {
    std::vector<NodeId> out;
    for_each_edge(graph.at(id), [&](NodeId e) { out.push_back(e); });
    std::reverse(out.begin(), out.end());
    return out;
  };

  colour[root.index] = 1;
  stack.emplace_back(root, children(root));
  while (!stack.empty()) {
    auto& [id, pending] = stack.back();
    if (pending.empty()) {
      colour[id.index] = 2;
      reachable.push_back(id);
      stack.pop_back();
      continue;
    }
    NodeId next = pending.back();
    pending.pop_back();
    if (!graph.contains(next)) {
      raise(ErrorCode::DanglingRef, "edge of node " + std::to_string(id.index) +
                                        " points at a missing node");
    }
    if (colour[next.index] == 1) {
      raise(ErrorCode::CycleDetected,
            "node " + std::to_string(next.index) + " is its own ancestor");
    }
    if (colour[next.index] == 0) {
      colour[next.index] = 1;
      stack.emplace_back(next, children(next));
    }
  }

  for (NodeId id : reachable) check_arity(graph.at(id));

  Evaluator ev(graph);
  for (NodeId id : reachable) {
    auto edge = duration_edge(graph.at(id));
    if (!edge) continue;
    double d = 0.0;
    try {
      d = ev.scalar(*edge);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::UnboundVar) continue;
      throw;
    }
    if (d < 0.0 || std::isnan(d)) {
      raise(ErrorCode::NegativeDuration,
            kind_str(graph.at(id)) + " node " + std::to_string(id.index) +
                " has duration " + std::to_string(d));
    }
  }
}

double evaluate_at(const Graph& graph, NodeId root, double t, double global_t) {
  validate(graph, root);
  Evaluator ev(graph);
  if (ev.is_waveform(root)) {
    const double d = ev.duration(root);
    if (t < 0.0 || t >= d) {
      raise(ErrorCode::OutOfRange, "t = " + std::to_string(t) +
                                       " outside [0, " + std::to_string(d) + ")");
    }
  }
  return ev.value(root, t, global_t);
}

SampledWaveform sample(const Graph& graph, NodeId root, double sample_rate) {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
    raise(ErrorCode::InvalidArgument, "sample rate must be positive");
  }
  validate(graph, root);
  Evaluator ev(graph);
  const double d = ev.duration(root);
  if (!std::isfinite(d)) {
    raise(ErrorCode::InvalidArgument, "duration is not finite");
  }
  const auto n = static_cast<std::size_t>(std::llround(d * sample_rate));
  SampledWaveform out{sample_rate, {}};
  out.samples.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / sample_rate;
    const double v = ev.value(root, t, t);
    if (!std::isfinite(v)) {
      raise(ErrorCode::InvalidArgument,
            "non-finite sample at t = " + std::to_string(t));
    }
    out.samples.push_back(v);
  }
  return out;
}

}  // namespace pulsegraph
