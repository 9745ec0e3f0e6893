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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_map>
#include <variant>
#include <vector>

#include "pulsegraph/error.hpp"

namespace pulsegraph {

/// Stable handle to a node inside one Graph arena.
struct NodeId {
  static constexpr std::uint32_t kInvalid =
      std::numeric_limits<std::uint32_t>::max();

  std::uint32_t index = kInvalid;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint32_t i) : index(i) {}

  constexpr bool valid() const { return index != kInvalid; }
  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

// Node payloads. Every numeric pulse parameter (including durations) is an
// edge to another node, usually a Num or a Var, so any parameter can be made
// symbolic and rebound later.
namespace node {

struct Num {
  double value = 0.0;
};

struct Var {
  std::string name;
  std::optional<double> bound;
};

struct Const {
  NodeId value;
  NodeId duration;
};

struct Zero {
  NodeId duration;
};

struct Sine {
  NodeId frequency;
  NodeId phase;
  NodeId duration;
  std::optional<NodeId> clock;
};

struct Cosine {
  NodeId frequency;
  NodeId phase;
  NodeId duration;
  std::optional<NodeId> clock;
};

// y(t) = sum_i coefficients[i] * t^i
struct Poly {
  std::vector<NodeId> coefficients;
  NodeId duration;
};

struct Gauss {
  NodeId amplitude;
  NodeId mean;
  NodeId sigma;
  NodeId duration;
};

struct Sum {
  std::vector<NodeId> operands;
};

struct Product {
  std::vector<NodeId> operands;
};

// Scalar maximum; used for symbolic padding of parallel contexts.
struct Max {
  std::vector<NodeId> operands;
};

struct Sequence {
  std::vector<NodeId> children;
};

struct Clock {
  std::string id;
};

// RFSoC parameter extensions. Knots/steps span the owning pulse's duration
// at equal spacing.
struct Spline {
  std::vector<NodeId> knots;
};

struct Discrete {
  std::vector<NodeId> steps;
};

struct Tone {
  NodeId frequency;
  NodeId phase;
  NodeId amplitude;
  bool sync_phase = false;
  std::optional<int> frame_index;
  bool feedback_enable = false;
};

struct Framerot {
  NodeId rotation;
  bool apply_at_start = false;
  bool apply_at_end = false;
  bool clear_accumulator = false;
};

struct Channel {
  std::vector<NodeId> tones;
  std::vector<NodeId> frames;
  NodeId duration;
};

}  // namespace node

using PulseNode =
    std::variant<node::Num, node::Var, node::Const, node::Zero, node::Sine,
                 node::Cosine, node::Poly, node::Gauss, node::Sum,
                 node::Product, node::Max, node::Sequence, node::Clock,
                 node::Spline, node::Discrete, node::Tone, node::Framerot,
                 node::Channel>;

// Order matches the PulseNode alternatives.
enum class NodeKind : std::uint8_t {
  Num,
  Var,
  Const,
  Zero,
  Sine,
  Cosine,
  Poly,
  Gauss,
  Sum,
  Product,
  Max,
  Sequence,
  Clock,
  Spline,
  Discrete,
  Tone,
  Framerot,
  Channel,
};

inline NodeKind kind_of(const PulseNode& n) {
  return static_cast<NodeKind>(n.index());
}
std::string_view kind_name(NodeKind kind);
std::optional<NodeKind> kind_from_name(std::string_view name);

/// True for kinds that carry a time extent (directly or through operands).
bool is_waveform_kind(NodeKind kind);

namespace detail {

template <class F>
void edges_of(const std::optional<NodeId>& id, F& f) {
  if (id) f(*id);
}
template <class F>
void edges_of(std::optional<NodeId>& id, F& f) {
  if (id) f(*id);
}

}  // namespace detail

/// Calls f on every outgoing edge of the node, in a fixed per-kind order.
/// Works for both const and mutable nodes (f receives NodeId or NodeId&).
template <class Node, class F>
void for_each_edge(Node& n, F&& f) {
  std::visit(
      [&](auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, node::Const>) {
          f(x.value);
          f(x.duration);
        } else if constexpr (std::is_same_v<T, node::Zero>) {
          f(x.duration);
        } else if constexpr (std::is_same_v<T, node::Sine> ||
                             std::is_same_v<T, node::Cosine>) {
          f(x.frequency);
          f(x.phase);
          f(x.duration);
          detail::edges_of(x.clock, f);
        } else if constexpr (std::is_same_v<T, node::Poly>) {
          for (auto& c : x.coefficients) f(c);
          f(x.duration);
        } else if constexpr (std::is_same_v<T, node::Gauss>) {
          f(x.amplitude);
          f(x.mean);
          f(x.sigma);
          f(x.duration);
        } else if constexpr (std::is_same_v<T, node::Sum> ||
                             std::is_same_v<T, node::Product> ||
                             std::is_same_v<T, node::Max>) {
          for (auto& o : x.operands) f(o);
        } else if constexpr (std::is_same_v<T, node::Sequence>) {
          for (auto& c : x.children) f(c);
        } else if constexpr (std::is_same_v<T, node::Spline>) {
          for (auto& k : x.knots) f(k);
        } else if constexpr (std::is_same_v<T, node::Discrete>) {
          for (auto& s : x.steps) f(s);
        } else if constexpr (std::is_same_v<T, node::Tone>) {
          f(x.frequency);
          f(x.phase);
          f(x.amplitude);
        } else if constexpr (std::is_same_v<T, node::Framerot>) {
          f(x.rotation);
        } else if constexpr (std::is_same_v<T, node::Channel>) {
          for (auto& t : x.tones) f(t);
          for (auto& fr : x.frames) f(fr);
          f(x.duration);
        }
        // Num, Var, Clock: leaves
      },
      n);
}

/// Either an existing node or a literal that becomes a Num node.
class Arg {
 public:
  Arg(NodeId id) : value_(id) {}  // NOLINT(google-explicit-constructor)
  Arg(double v) : value_(v) {}    // NOLINT(google-explicit-constructor)

 private:
  friend class Graph;
  std::variant<NodeId, double> value_;
};

/// Append-only arena of pulse nodes. A node may have several parents, so
/// subgraphs (frames, tiled fragments) are shared rather than copied. Only
/// Var binding slots change after a node is created, apart from the explicit
/// replace() escape hatch.
class Graph {
 public:
  Graph() = default;

  /// Appends a node. Every edge must reference an existing node.
  NodeId add(PulseNode node);

  /// Overwrites an existing node in place. Unlike add(), this can introduce
  /// cycles; call validate() afterwards.
  void replace(NodeId id, PulseNode node);

  const PulseNode& at(NodeId id) const {
    if (!contains(id)) [[unlikely]] dangling(id);
    return nodes_[id.index];
  }
  NodeKind kind(NodeId id) const { return kind_of(at(id)); }

  template <class T>
  const T* get_if(NodeId id) const {
    return std::get_if<T>(&at(id));
  }

  bool contains(NodeId id) const {
    return id.valid() && id.index < nodes_.size();
  }
  std::size_t size() const { return nodes_.size(); }

  void bind(NodeId var, double value);
  void unbind(NodeId var);

  // Leaf constructors.
  NodeId num(double value);
  /// Vars are interned by name: one binding slot per name per arena.
  NodeId var(const std::string& name);
  NodeId clock(std::string id);
  std::optional<NodeId> find_var(std::string_view name) const;

  // Waveforms.
  NodeId constant(Arg value, Arg duration);
  NodeId zero(Arg duration);
  NodeId sine(Arg frequency, Arg phase, Arg duration,
              std::optional<NodeId> clock = std::nullopt);
  NodeId cosine(Arg frequency, Arg phase, Arg duration,
                std::optional<NodeId> clock = std::nullopt);
  NodeId poly(std::vector<Arg> coefficients, Arg duration);
  NodeId gauss(Arg amplitude, Arg mean, Arg sigma, Arg duration);

  // Operators.
  NodeId sum(std::vector<Arg> operands);
  NodeId product(std::vector<Arg> operands);
  NodeId max(std::vector<Arg> operands);
  NodeId sequence(std::vector<NodeId> children);

  // RFSoC extensions.
  NodeId spline(std::vector<Arg> knots);
  NodeId discrete(std::vector<Arg> steps);
  NodeId tone(Arg frequency, Arg phase, Arg amplitude, bool sync_phase = false,
              std::optional<int> frame_index = std::nullopt,
              bool feedback_enable = false);
  NodeId framerot(Arg rotation, bool apply_at_start = false,
                  bool apply_at_end = false, bool clear_accumulator = false);
  NodeId channel(NodeId tone0, NodeId tone1, NodeId frame0, NodeId frame1,
                 Arg duration);

 private:
  NodeId resolve(const Arg& arg);
  std::vector<NodeId> resolve(const std::vector<Arg>& args);
  void check_edges(const PulseNode& node) const;
  [[noreturn]] static void dangling(NodeId id);

  std::vector<PulseNode> nodes_;
  std::unordered_map<std::string, NodeId> vars_;
};

}  // namespace pulsegraph
