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

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pulsegraph/graph.hpp"
#include "pulsegraph/transform.hpp"

namespace pulsegraph {

/// Variable name -> every Var slot with that name.
namespace detail {
struct ScheduleContext;
}  // namespace detail

using ParameterTable = std::map<std::string, std::vector<NodeId>>;

/// A finalized multi-channel schedule. Every channel root spans the same
/// total duration. The structure is immutable; only Var bindings change.
class Schedule {
 public:
  Schedule(std::shared_ptr<Graph> graph, std::vector<std::string> channels,
           std::vector<NodeId> roots, NodeId total_duration);

  const Graph& graph() const { return *graph_; }
  Graph& graph() { return *graph_; }
  const std::shared_ptr<Graph>& shared_graph() const { return graph_; }

  /// Channel names in declaration/first-use order.
  const std::vector<std::string>& channels() const { return channels_; }
  bool has_channel(std::string_view name) const;
  NodeId root(std::string_view channel) const;
  const std::vector<NodeId>& roots() const { return roots_; }

  /// Evaluated under the current bindings.
  double total_duration() const;
  NodeId total_duration_node() const { return total_; }

  const ParameterTable& parameters() const { return parameters_; }
  std::size_t parameter_count() const { return parameters_.size(); }

 private:
  std::shared_ptr<Graph> graph_;
  std::vector<std::string> channels_;
  std::vector<NodeId> roots_;
  NodeId total_;
  ParameterTable parameters_;
};

/// Builds schedules from nested sequential/parallel contexts. Parallel
/// branches start together; shorter branches and unaddressed channels are
/// padded at the tail with Zero nodes, symbolically when durations depend on
/// variables.
class ScheduleBuilder {
 public:
  explicit ScheduleBuilder(std::vector<std::string> channels = {});
  ScheduleBuilder(std::shared_ptr<Graph> graph,
                  std::vector<std::string> channels = {});
  ~ScheduleBuilder();
  ScheduleBuilder(ScheduleBuilder&&) noexcept;
  ScheduleBuilder& operator=(ScheduleBuilder&&) noexcept;

  Graph& graph() { return *graph_; }

  void open_sequential();
  void open_parallel();
  void close();
  void play(const std::string& channel, NodeId root);

  /// Pads, normalizes every channel with the transform pipeline, and collects
  /// the parameter table. Consumes the builder.
  Schedule finalize();

  std::size_t depth() const;

 private:
  std::shared_ptr<Graph> graph_;
  std::vector<std::string> declared_;
  std::vector<std::string> played_;
  std::vector<std::unique_ptr<detail::ScheduleContext>> stack_;
  std::vector<std::unique_ptr<detail::ScheduleContext>> closed_;
};

/// Repeats a finalized schedule n times per channel by reference.
Schedule tile(const Schedule& fragment, std::size_t n);

/// Binds schedule parameters in place. Unknown names raise UnknownVariable.
void bind_parameters(Schedule& schedule, const Bindings& bindings);
void reset_parameters(Schedule& schedule);

}  // namespace pulsegraph
