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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pulsegraph/graph.hpp"

namespace pulsegraph {

/// Uniformly sampled real signal; samples[k] is the value at k / sample_rate.
struct SampledWaveform {
  double sample_rate = 0.0;
  std::vector<double> samples;

  std::size_t size() const { return samples.size(); }
  double duration() const {
    return sample_rate > 0.0 ? static_cast<double>(samples.size()) / sample_rate
                             : 0.0;
  }
};

/// Duration in seconds. Durationless nodes (Num, Var, Clock, parameter
/// extensions) report 0.
/// True if t has reached boundary. Instants within a few ulps count as
/// reached, so segment boundaries that sit on the sample grid survive the
/// rounding picked up when durations are summed.
inline bool at_or_after(double t, double boundary) {
  return t + 16.0 * std::numeric_limits<double>::epsilon() * std::abs(t) >= boundary;
}

double duration(const Graph& graph, NodeId root);

/// Structural check of everything reachable from root: edge targets exist,
/// no cycles, operator arities, and nonnegative (evaluable) durations.
void validate(const Graph& graph, NodeId root);

/// Pointwise value of root at local time t; global_t is the position on the
/// enclosing timeline and only matters for phase-continuous (clocked) sines.
double evaluate_at(const Graph& graph, NodeId root, double t, double global_t);
inline double evaluate_at(const Graph& graph, NodeId root, double t) {
  return evaluate_at(graph, root, t, t);
}

SampledWaveform sample(const Graph& graph, NodeId root, double sample_rate);

/// True if the node has a time extent (leaf waveform, Sequence, or an
/// operator with at least one waveform operand).
bool is_waveform(const Graph& graph, NodeId id);

/// Evaluation engine with memoized durations and sequence offsets. Cached
/// values assume bindings do not change during the evaluator's lifetime.
class Evaluator {
 public:
  explicit Evaluator(const Graph& graph);

  const Graph& graph() const { return graph_; }

  double duration(NodeId id);
  bool is_waveform(NodeId id);

  /// Value of a durationless parameter (Num, Var, or scalar arithmetic).
  double scalar(NodeId id);

  double value(NodeId id, double t, double global_t);

  /// Parameter value for an RFSoC tone/frame field whose Spline or Discrete
  /// knots span owner_duration.
  double param_value(NodeId id, double t, double global_t,
                     double owner_duration);

  /// Integral of a frequency-like waveform over [0, t], computed piecewise
  /// in closed form.
  double integral(NodeId id, double t);

  /// Time elapsed since the start of the constant segment active at t.
  double segment_time(NodeId id, double t);

  /// True if the duration does not depend on any Var, so it holds for every
  /// future binding.
  bool static_duration(NodeId id);

 private:
  struct SeqLookup {
    std::size_t index;
    double local_t;
  };
  SeqLookup locate(NodeId seq, const node::Sequence& s, double t);
  const std::vector<double>& starts(NodeId seq, const node::Sequence& s);
  double sine_phase(const node::Sine& s, double t, double global_t);
  double channel_value(const node::Channel& c, double t, double global_t);
  double param_integral(NodeId id, double t, double owner_duration);

  const Graph& graph_;
  // Grows on demand so nodes appended during a rewrite can be cached too.
  template <class T>
  class NodeCache {
   public:
    const T* find(NodeId id) const {
      return id.index < values_.size() && values_[id.index]
                 ? &*values_[id.index]
                 : nullptr;
    }
    void reserve(std::size_t n) { values_.resize(n); }
    void store(NodeId id, T value) {
      if (id.index >= values_.size()) values_.resize(id.index + 1);
      values_[id.index] = value;
    }

   private:
    std::vector<std::optional<T>> values_;
  };

  NodeCache<double> durations_;
  NodeCache<double> scalars_;
  NodeCache<bool> waveform_;
  NodeCache<bool> var_free_;
  NodeCache<bool> static_;
  NodeCache<bool> literal_;
  std::unordered_map<std::uint32_t, std::vector<double>> starts_;
  bool var_free(NodeId id);
  // Num, or Sum/Product/Max over literal operands only.
  bool literal(NodeId id);
};

}  // namespace pulsegraph
