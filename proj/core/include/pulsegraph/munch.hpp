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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pulsegraph/error.hpp"
#include "pulsegraph/evaluate.hpp"
#include "pulsegraph/graph.hpp"

namespace pulsegraph {

/// Ordered structural rules lowering a graph root to a device record. The
/// first matcher returning a value wins; matchers return nullopt on a
/// structural mismatch and throw only for parameter violations.
/// Graph plus a memoizing evaluator shared by every rule of one munch run
/// (or of a whole schedule when the caller keeps it). Bindings must not
/// change while a context is alive.
struct MunchContext {
  explicit MunchContext(const Graph& g) : graph(g), eval(g) {}

  const Graph& graph;
  Evaluator eval;
};

template <class Record, class Config>
class Muncher {
 public:
  using Matcher = std::function<std::optional<Record>(MunchContext&, NodeId,
                                                      const Config&)>;
  struct Rule {
    std::string name;
    Matcher matcher;
  };

  Muncher(std::vector<Rule> rules, Config config = {})
      : rules_(std::move(rules)), config_(std::move(config)) {
    if (rules_.empty()) {
      raise(ErrorCode::InvalidArgument, "muncher needs at least one rule");
    }
  }

  Record munch(const Graph& graph, NodeId root) const {
    return munch(graph, root, config_);
  }

  Record munch(const Graph& graph, NodeId root, const Config& config) const {
    MunchContext ctx(graph);
    return munch(ctx, root, config);
  }

  Record munch(MunchContext& ctx, NodeId root, const Config& config) const {
    for (const auto& rule : rules_) {
      if (auto out = rule.matcher(ctx, root, config)) return std::move(*out);
    }
    throw NoMatchError(std::string(kind_name(ctx.graph.kind(root))),
                       rule_names());
  }

  std::vector<std::string> rule_names() const {
    std::vector<std::string> names;
    names.reserve(rules_.size());
    for (const auto& r : rules_) names.push_back(r.name);
    return names;
  }

  const std::vector<Rule>& rules() const { return rules_; }
  const Config& config() const { return config_; }

 private:
  std::vector<Rule> rules_;
  Config config_;
};

template <class Record, class Config>
Record munch(const Muncher<Record, Config>& muncher, const Graph& graph,
             NodeId root) {
  return muncher.munch(graph, root);
}

}  // namespace pulsegraph
