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

#include "pulsegraph/graph.hpp"

#include <array>
#include <utility>

namespace pulsegraph {

namespace {

constexpr std::array<std::string_view, 18> kKindNames = {
    "Num",      "Var",   "Const",   "Zero",     "Sine",  "Cosine",
    "Poly",     "Gauss", "Sum",     "Product",  "Max",   "Sequence",
    "Clock",    "Spline", "Discrete", "Tone",   "Framerot", "Channel",
};

static_assert(kKindNames.size() == std::variant_size_v<PulseNode>);

}  // namespace

std::string_view kind_name(NodeKind kind) {
  return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<NodeKind> kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<NodeKind>(i);
  }
  return std::nullopt;
}

bool is_waveform_kind(NodeKind kind) {
  switch (kind) {
    case NodeKind::Const:
    case NodeKind::Zero:
    case NodeKind::Sine:
    case NodeKind::Cosine:
    case NodeKind::Poly:
    case NodeKind::Gauss:
    case NodeKind::Sequence:
    case NodeKind::Channel:
      return true;
    default:
      return false;
  }
}

NodeId Graph::add(PulseNode node) {
  check_edges(node);
  const auto* v = std::get_if<node::Var>(&node);
  NodeId id(static_cast<std::uint32_t>(nodes_.size()));
  if (v != nullptr) vars_.try_emplace(v->name, id);
  nodes_.push_back(std::move(node));
  return id;
}

void Graph::replace(NodeId id, PulseNode node) {
  if (!contains(id)) {
    raise(ErrorCode::DanglingRef, "replace target does not exist");
  }
  check_edges(node);
  nodes_[id.index] = std::move(node);
}

void Graph::dangling(NodeId id) {
  raise(ErrorCode::DanglingRef,
        "node handle " + std::to_string(id.index) + " is not in the graph");
}

void Graph::check_edges(const PulseNode& node) const {
  for_each_edge(node, [&](NodeId e) {
    if (!contains(e)) {
      raise(ErrorCode::DanglingRef,
            std::string(kind_name(kind_of(node))) + " edge points at missing node");
    }
  });
}

void Graph::bind(NodeId var, double value) {
  auto* v = std::get_if<node::Var>(&nodes_.at(var.index));
  if (v == nullptr) raise(ErrorCode::InvalidArgument, "bind target is not a Var");
  v->bound = value;
}

void Graph::unbind(NodeId var) {
  auto* v = std::get_if<node::Var>(&nodes_.at(var.index));
  if (v == nullptr) raise(ErrorCode::InvalidArgument, "unbind target is not a Var");
  v->bound.reset();
}

NodeId Graph::num(double value) { return add(node::Num{value}); }

NodeId Graph::var(const std::string& name) {
  if (auto it = vars_.find(name); it != vars_.end()) return it->second;
  return add(node::Var{name, std::nullopt});
}

std::optional<NodeId> Graph::find_var(std::string_view name) const {
  if (auto it = vars_.find(std::string(name)); it != vars_.end()) {
    return it->second;
  }
  return std::nullopt;
}

NodeId Graph::clock(std::string id) { return add(node::Clock{std::move(id)}); }

NodeId Graph::resolve(const Arg& arg) {
  if (const auto* id = std::get_if<NodeId>(&arg.value_)) return *id;
  return num(std::get<double>(arg.value_));
}

std::vector<NodeId> Graph::resolve(const std::vector<Arg>& args) {
  std::vector<NodeId> out;
  out.reserve(args.size());
  for (const auto& a : args) out.push_back(resolve(a));
  return out;
}

NodeId Graph::constant(Arg value, Arg duration) {
  auto v = resolve(value);
  auto d = resolve(duration);
  return add(node::Const{v, d});
}

NodeId Graph::zero(Arg duration) { return add(node::Zero{resolve(duration)}); }

NodeId Graph::sine(Arg frequency, Arg phase, Arg duration,
                   std::optional<NodeId> clock) {
  auto f = resolve(frequency);
  auto p = resolve(phase);
  auto d = resolve(duration);
  return add(node::Sine{f, p, d, clock});
}

NodeId Graph::cosine(Arg frequency, Arg phase, Arg duration,
                     std::optional<NodeId> clock) {
  auto f = resolve(frequency);
  auto p = resolve(phase);
  auto d = resolve(duration);
  return add(node::Cosine{f, p, d, clock});
}

NodeId Graph::poly(std::vector<Arg> coefficients, Arg duration) {
  auto c = resolve(coefficients);
  auto d = resolve(duration);
  return add(node::Poly{std::move(c), d});
}

NodeId Graph::gauss(Arg amplitude, Arg mean, Arg sigma, Arg duration) {
  auto a = resolve(amplitude);
  auto m = resolve(mean);
  auto s = resolve(sigma);
  auto d = resolve(duration);
  return add(node::Gauss{a, m, s, d});
}

NodeId Graph::sum(std::vector<Arg> operands) {
  return add(node::Sum{resolve(operands)});
}

NodeId Graph::product(std::vector<Arg> operands) {
  return add(node::Product{resolve(operands)});
}

NodeId Graph::max(std::vector<Arg> operands) {
  return add(node::Max{resolve(operands)});
}

NodeId Graph::sequence(std::vector<NodeId> children) {
  return add(node::Sequence{std::move(children)});
}

NodeId Graph::spline(std::vector<Arg> knots) {
  return add(node::Spline{resolve(knots)});
}

NodeId Graph::discrete(std::vector<Arg> steps) {
  return add(node::Discrete{resolve(steps)});
}

NodeId Graph::tone(Arg frequency, Arg phase, Arg amplitude, bool sync_phase,
                   std::optional<int> frame_index, bool feedback_enable) {
  if (frame_index && (*frame_index < 0 || *frame_index > 1)) {
    raise(ErrorCode::InvalidArgument, "tone frame index must be 0 or 1");
  }
  auto f = resolve(frequency);
  auto p = resolve(phase);
  auto a = resolve(amplitude);
  return add(node::Tone{f, p, a, sync_phase, frame_index, feedback_enable});
}

NodeId Graph::framerot(Arg rotation, bool apply_at_start, bool apply_at_end,
                       bool clear_accumulator) {
  return add(node::Framerot{resolve(rotation), apply_at_start, apply_at_end,
                            clear_accumulator});
}

NodeId Graph::channel(NodeId tone0, NodeId tone1, NodeId frame0, NodeId frame1,
                      Arg duration) {
  auto d = resolve(duration);
  return add(node::Channel{{tone0, tone1}, {frame0, frame1}, d});
}

}  // namespace pulsegraph
