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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "pulsegraph/graph.hpp"

namespace pulsegraph {

/// Variable name -> value.
using Bindings = std::map<std::string, double>;

/// Reachable nodes in post-order (children before parents), each once.
std::vector<NodeId> post_order(const Graph& graph, NodeId root);

/// Depth-first post-order traversal. The callback is dispatched on the node
/// variant: it is invoked as callback(NodeId, const node::X&), so an
/// overload set can handle the kinds it cares about with a generic fallback.
template <class Callback>
void visit_depth_first(const Graph& graph, NodeId root, Callback&& callback) {
  for (NodeId id : post_order(graph, root)) {
    std::visit([&](const auto& n) { callback(id, n); }, graph.at(id));
  }
}

/// Rebuilds the graph bottom-up. The rule is called once per reachable node
/// after its children were rewritten and returns a replacement or nullopt.
/// Shared subgraphs are rewritten once; if nothing changes the original root
/// is returned and no node is allocated.
using RewriteRule = std::function<std::optional<NodeId>(Graph&, NodeId)>;
NodeId rewrite(Graph& graph, NodeId root, const RewriteRule& rule);

// Equivalence-preserving passes. Each returns the new root.
NodeId remove_zero_duration(Graph& graph, NodeId root);
NodeId cosine_to_sine(Graph& graph, NodeId root);
NodeId fold_constants(Graph& graph, NodeId root);
NodeId merge_identical_consts(Graph& graph, NodeId root);

/// The fixed pipeline order: zero-duration removal, cosine rewriting,
/// constant folding, then constant merging.
NodeId normalize(Graph& graph, NodeId root);

/// True if a Clock node or a clocked Sine/Cosine is reachable.
bool detect_clock(const Graph& graph, NodeId root);

/// Binds every Var reachable from root whose name is in bindings. Names not
/// present in the graph raise UnknownVariable before anything is bound.
void substitute(Graph& graph, NodeId root, const Bindings& bindings);

/// Clears every Var binding reachable from root.
void reset_bindings(Graph& graph, NodeId root);

/// Names of the Vars reachable from root, sorted.
std::vector<std::string> variable_names(const Graph& graph, NodeId root);

/// Deep structural comparison: same kinds, same literal values, same flags,
/// structurally equal children. Var nodes compare by name.
bool structurally_equal(const Graph& a, NodeId ra, const Graph& b, NodeId rb);
inline bool structurally_equal(const Graph& g, NodeId ra, NodeId rb) {
  return structurally_equal(g, ra, g, rb);
}

}  // namespace pulsegraph
