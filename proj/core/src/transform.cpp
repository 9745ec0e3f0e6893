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

#include "pulsegraph/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <unordered_map>
#include <utility>

#include "pulsegraph/evaluate.hpp"

namespace pulsegraph {

std::vector<NodeId> post_order(const Graph& graph, NodeId root) {
  std::vector<NodeId> order;
  std::vector<char> seen(graph.size(), 0);
  // (node, next edge index)
  std::vector<std::pair<NodeId, std::vector<NodeId>>> stack;
  auto edges = [&](NodeId id) {
    std::vector<NodeId> out;
    for_each_edge(graph.at(id), [&](NodeId e) { out.push_back(e); });
    std::reverse(out.begin(), out.end());
    return out;
  };
  seen.at(root.index) = 1;
  stack.emplace_back(root, edges(root));
  while (!stack.empty()) {
    auto& pending = stack.back().second;
    if (pending.empty()) {
      order.push_back(stack.back().first);
      stack.pop_back();
      continue;
    }
    NodeId next = pending.back();
    pending.pop_back();
    if (seen.at(next.index)) continue;
    seen[next.index] = 1;
    stack.emplace_back(next, edges(next));
  }
  return order;
}

NodeId rewrite(Graph& graph, NodeId root, const RewriteRule& rule) {
  std::unordered_map<std::uint32_t, NodeId> memo;
  std::function<NodeId(NodeId)> go = [&](NodeId id) -> NodeId {
    if (auto it = memo.find(id.index); it != memo.end()) return it->second;
    std::vector<NodeId> rewritten;
    bool changed = false;
    {
      std::vector<NodeId> edges;
      for_each_edge(graph.at(id), [&](NodeId e) { edges.push_back(e); });
      rewritten.reserve(edges.size());
      for (NodeId e : edges) {
        NodeId r = go(e);
        changed |= (r != e);
        rewritten.push_back(r);
      }
    }
    NodeId current = id;
    if (changed) {
      PulseNode copy = graph.at(id);
      std::size_t i = 0;
      for_each_edge(copy, [&](NodeId& e) { e = rewritten[i++]; });
      current = graph.add(std::move(copy));
    }
    NodeId out = rule(graph, current).value_or(current);
    memo.emplace(id.index, out);
    return out;
  };
  return go(root);
}

namespace {

// Duration if it holds for every binding of the graph's variables.
std::optional<double> known_duration(Evaluator& ev, NodeId id) {
  if (!ev.static_duration(id)) return std::nullopt;
  return ev.duration(id);
}

bool nearly_equal(double a, double b) {
  return a == b ||
         std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

NodeId remove_zero_duration(Graph& graph, NodeId root) {
  Evaluator ev(graph);
  auto is_zero = [&](NodeId id) {
    if (!ev.is_waveform(id)) return false;
    auto d = known_duration(ev, id);
    return d && *d == 0.0;
  };
  NodeId out = rewrite(graph, root, [&](Graph& g, NodeId id) -> std::optional<NodeId> {
    const auto* seq = g.get_if<node::Sequence>(id);
    if (seq == nullptr) return std::nullopt;
    std::vector<NodeId> kept;
    for (NodeId c : seq->children) {
      if (!is_zero(c)) kept.push_back(c);
    }
    if (kept.empty()) return seq->children.front();
    if (kept.size() == 1) return kept.front();
    if (kept.size() == seq->children.size()) return std::nullopt;
    return g.sequence(std::move(kept));
  });
  if (is_zero(out)) {
    raise(ErrorCode::EmptyResult, "graph has zero total duration");
  }
  return out;
}

namespace {

NodeId shifted_phase(Graph& g, NodeId phase, double shift) {
  if (const auto* n = g.get_if<node::Num>(phase)) return g.num(n->value + shift);
  if (const auto* seq = g.get_if<node::Sequence>(phase)) {
    bool all_literal = std::all_of(seq->children.begin(), seq->children.end(),
                                   [&](NodeId c) {
                                     const auto* k = g.get_if<node::Const>(c);
                                     return k && g.kind(k->value) == NodeKind::Num;
                                   });
    if (all_literal) {
      std::vector<NodeId> children = seq->children;
      for (NodeId& c : children) {
        const auto k = std::get<node::Const>(g.at(c));
        const double v = std::get<node::Num>(g.at(k.value)).value;
        c = g.constant(v + shift, k.duration);
      }
      return g.sequence(std::move(children));
    }
  }
  return g.sum({phase, shift});
}

}  // namespace

NodeId cosine_to_sine(Graph& graph, NodeId root) {
  return rewrite(graph, root, [](Graph& g, NodeId id) -> std::optional<NodeId> {
    const auto* c = g.get_if<node::Cosine>(id);
    if (c == nullptr) return std::nullopt;
    const node::Cosine cos = *c;
    NodeId phase = shifted_phase(g, cos.phase, std::numbers::pi / 2.0);
    return g.add(node::Sine{cos.frequency, phase, cos.duration, cos.clock});
  });
}

NodeId fold_constants(Graph& graph, NodeId root) {
  return rewrite(graph, root, [](Graph& g, NodeId id) -> std::optional<NodeId> {
    const NodeKind kind = g.kind(id);
    if (kind != NodeKind::Sum && kind != NodeKind::Product &&
        kind != NodeKind::Max) {
      return std::nullopt;
    }
    std::vector<NodeId> operands;
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, node::Sum> ||
                        std::is_same_v<T, node::Product> ||
                        std::is_same_v<T, node::Max>) {
            operands = x.operands;
          }
        },
        g.at(id));

    // Combine literals in operand order, matching the evaluator.
    std::size_t literal_count = 0;
    double folded = kind == NodeKind::Sum       ? 0.0
                    : kind == NodeKind::Product ? 1.0
                                                : -INFINITY;
    std::vector<NodeId> rest;
    for (NodeId o : operands) {
      if (const auto* n = g.get_if<node::Num>(o)) {
        ++literal_count;
        if (kind == NodeKind::Sum) {
          folded += n->value;
        } else if (kind == NodeKind::Product) {
          folded *= n->value;
        } else {
          folded = std::max(folded, n->value);
        }
      } else {
        rest.push_back(o);
      }
    }
    if (literal_count == 0) return std::nullopt;
    if (rest.empty()) return g.num(folded);

    const bool identity = (kind == NodeKind::Sum && folded == 0.0) ||
                          (kind == NodeKind::Product && folded == 1.0);
    if (literal_count == 1 && !identity) return std::nullopt;

    std::vector<NodeId> next;
    if (!identity) next.push_back(g.num(folded));
    next.insert(next.end(), rest.begin(), rest.end());
    if (next.size() == 1) return next.front();
    if (kind == NodeKind::Sum) return g.add(node::Sum{std::move(next)});
    if (kind == NodeKind::Product) return g.add(node::Product{std::move(next)});
    return g.add(node::Max{std::move(next)});
  });
}

namespace {

// Step boundaries in the frequency of an unclocked oscillator restart its
// phase, so equal neighbours there are not interchangeable with one step.
std::set<NodeId> phase_resetting_sequences(const Graph& g, NodeId root) {
  std::set<NodeId> out;
  std::vector<NodeId> stack;
  for (NodeId id : post_order(g, root)) {
    const auto& n = g.at(id);
    if (const auto* s = std::get_if<node::Sine>(&n); s && !s->clock) {
      stack.push_back(s->frequency);
    } else if (const auto* c = std::get_if<node::Cosine>(&n); c && !c->clock) {
      stack.push_back(c->frequency);
    }
  }
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    const auto* seq = g.get_if<node::Sequence>(id);
    if (seq == nullptr || !out.insert(id).second) continue;
    stack.insert(stack.end(), seq->children.begin(), seq->children.end());
  }
  return out;
}

}  // namespace

NodeId merge_identical_consts(Graph& graph, NodeId root) {
  const auto keep = phase_resetting_sequences(graph, root);
  return rewrite(graph, root, [&keep](Graph& g, NodeId id) -> std::optional<NodeId> {
    const auto* seq = g.get_if<node::Sequence>(id);
    if (seq == nullptr || keep.contains(id)) return std::nullopt;
    const std::vector<NodeId> children = seq->children;

    auto same_value = [&](NodeId a, NodeId b) {
      const auto& ka = std::get<node::Const>(g.at(a));
      const auto& kb = std::get<node::Const>(g.at(b));
      if (ka.value == kb.value) return true;
      const auto* na = g.get_if<node::Num>(ka.value);
      const auto* nb = g.get_if<node::Num>(kb.value);
      return na && nb && nearly_equal(na->value, nb->value);
    };

    std::vector<NodeId> merged;
    bool changed = false;
    for (std::size_t i = 0; i < children.size();) {
      std::size_t j = i + 1;
      if (g.kind(children[i]) == NodeKind::Const) {
        while (j < children.size() && g.kind(children[j]) == NodeKind::Const &&
               same_value(children[i], children[j])) {
          ++j;
        }
      }
      if (j - i == 1) {
        merged.push_back(children[i]);
      } else {
        changed = true;
        std::vector<NodeId> durations;
        bool literal = true;
        double total = 0.0;
        for (std::size_t k = i; k < j; ++k) {
          NodeId d = std::get<node::Const>(g.at(children[k])).duration;
          durations.push_back(d);
          if (const auto* n = g.get_if<node::Num>(d)) {
            total += n->value;
          } else {
            literal = false;
          }
        }
        NodeId value = std::get<node::Const>(g.at(children[i])).value;
        NodeId dur = literal ? g.num(total)
                             : g.add(node::Sum{std::move(durations)});
        merged.push_back(g.add(node::Const{value, dur}));
      }
      i = j;
    }
    if (!changed) return std::nullopt;
    if (merged.size() == 1) return merged.front();
    return g.sequence(std::move(merged));
  });
}

NodeId normalize(Graph& graph, NodeId root) {
  root = remove_zero_duration(graph, root);
  root = cosine_to_sine(graph, root);
  root = fold_constants(graph, root);
  root = merge_identical_consts(graph, root);
  return root;
}

bool detect_clock(const Graph& graph, NodeId root) {
  for (NodeId id : post_order(graph, root)) {
    const auto& n = graph.at(id);
    if (std::holds_alternative<node::Clock>(n)) return true;
    if (const auto* s = std::get_if<node::Sine>(&n); s && s->clock) return true;
    if (const auto* c = std::get_if<node::Cosine>(&n); c && c->clock) return true;
  }
  return false;
}

namespace {

std::unordered_map<std::string, std::vector<NodeId>> collect_vars(
    const Graph& graph, NodeId root) {
  std::unordered_map<std::string, std::vector<NodeId>> vars;
  for (NodeId id : post_order(graph, root)) {
    if (const auto* v = graph.get_if<node::Var>(id)) vars[v->name].push_back(id);
  }
  return vars;
}

}  // namespace

void substitute(Graph& graph, NodeId root, const Bindings& bindings) {
  auto vars = collect_vars(graph, root);
  for (const auto& [name, value] : bindings) {
    if (!vars.contains(name)) {
      raise(ErrorCode::UnknownVariable, "no variable named '" + name + "'");
    }
    if (!std::isfinite(value)) {
      raise(ErrorCode::InvalidArgument,
            "binding for '" + name + "' is not finite");
    }
  }
  for (const auto& [name, value] : bindings) {
    for (NodeId id : vars[name]) graph.bind(id, value);
  }
}

void reset_bindings(Graph& graph, NodeId root) {
  for (NodeId id : post_order(graph, root)) {
    if (graph.kind(id) == NodeKind::Var) graph.unbind(id);
  }
}

std::vector<std::string> variable_names(const Graph& graph, NodeId root) {
  std::vector<std::string> names;
  for (const auto& [name, ids] : collect_vars(graph, root)) names.push_back(name);
  std::sort(names.begin(), names.end());
  return names;
}

namespace {

struct StructuralComparer {
  const Graph& a;
  const Graph& b;
  std::set<std::pair<std::uint32_t, std::uint32_t>> equal;

  bool operator()(NodeId x, NodeId y) {
    if (&a == &b && x == y) return true;
    if (equal.contains({x.index, y.index})) return true;
    const auto& nx = a.at(x);
    const auto& ny = b.at(y);
    if (nx.index() != ny.index()) return false;
    if (!same_payload(nx, ny)) return false;
    std::vector<NodeId> ex;
    std::vector<NodeId> ey;
    for_each_edge(nx, [&](NodeId e) { ex.push_back(e); });
    for_each_edge(ny, [&](NodeId e) { ey.push_back(e); });
    if (ex.size() != ey.size()) return false;
    for (std::size_t i = 0; i < ex.size(); ++i) {
      if (!(*this)(ex[i], ey[i])) return false;
    }
    equal.insert({x.index, y.index});
    return true;
  }

  static bool same_payload(const PulseNode& nx, const PulseNode& ny) {
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          const auto& y = std::get<T>(ny);
          if constexpr (std::is_same_v<T, node::Num>) {
            return x.value == y.value;
          } else if constexpr (std::is_same_v<T, node::Var>) {
            return x.name == y.name;
          } else if constexpr (std::is_same_v<T, node::Clock>) {
            return x.id == y.id;
          } else if constexpr (std::is_same_v<T, node::Sine> ||
                               std::is_same_v<T, node::Cosine>) {
            return x.clock.has_value() == y.clock.has_value();
          } else if constexpr (std::is_same_v<T, node::Tone>) {
            return x.sync_phase == y.sync_phase &&
                   x.frame_index == y.frame_index &&
                   x.feedback_enable == y.feedback_enable;
          } else if constexpr (std::is_same_v<T, node::Framerot>) {
            return x.apply_at_start == y.apply_at_start &&
                   x.apply_at_end == y.apply_at_end &&
                   x.clear_accumulator == y.clear_accumulator;
          } else {
            return true;
          }
        },
        nx);
  }
};

}  // namespace

bool structurally_equal(const Graph& a, NodeId ra, const Graph& b, NodeId rb) {
  StructuralComparer cmp{a, b, {}};
  return cmp(ra, rb);
}

}  // namespace pulsegraph
