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


#include "pulsegraph/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <utility>
#include <variant>

#include "pulsegraph/evaluate.hpp"

namespace pulsegraph {

namespace detail {

struct ScheduleContext {
  struct Play {
    std::string channel;
    NodeId root;
  };
  using Item = std::variant<Play, std::unique_ptr<ScheduleContext>>;

  bool parallel = false;
  std::vector<Item> items;
  std::set<std::string> channels;
};

}  // namespace detail

namespace {

using detail::ScheduleContext;

// Either a duration that holds under every binding, or a scalar expression.
struct Dur {
  std::optional<double> value;
  NodeId node;

  bool is_zero() const { return value && *value == 0.0; }
};

NodeId as_node(Graph& g, const Dur& d) {
  return d.value ? g.num(*d.value) : d.node;
}

Dur add(Graph& g, const Dur& a, const Dur& b) {
  if (a.value && b.value) return {*a.value + *b.value, {}};
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return {std::nullopt, g.sum({as_node(g, a), as_node(g, b)})};
}

Dur maximum(Graph& g, const std::vector<Dur>& ds) {
  std::optional<double> concrete;
  std::vector<NodeId> symbolic;
  for (const auto& d : ds) {
    if (d.value) {
      concrete = concrete ? std::max(*concrete, *d.value) : *d.value;
    } else if (std::find(symbolic.begin(), symbolic.end(), d.node) ==
               symbolic.end()) {
      symbolic.push_back(d.node);
    }
  }
  if (symbolic.empty()) return {concrete.value_or(0.0), {}};
  if (symbolic.size() == 1 && (!concrete || *concrete == 0.0)) {
    return {std::nullopt, symbolic.front()};
  }
  std::vector<Arg> ops(symbolic.begin(), symbolic.end());
  if (concrete && *concrete != 0.0) ops.emplace_back(*concrete);
  return {std::nullopt, g.max(std::move(ops))};
}

// Amount missing from d to reach total; nullopt when nothing is missing.
std::optional<Dur> shortfall(Graph& g, const Dur& total, const Dur& d) {
  if (total.value && d.value) {
    if (*total.value == *d.value) return std::nullopt;
    return Dur{*total.value - *d.value, {}};
  }
  if (!total.value && !d.value && total.node == d.node) return std::nullopt;
  if (d.is_zero()) return total;
  return Dur{std::nullopt,
             g.sum({as_node(g, total), g.product({-1.0, as_node(g, d)})})};
}

struct Block {
  std::map<std::string, std::vector<NodeId>> segments;
  Dur duration{0.0, {}};
};

class Lowering {
 public:
  explicit Lowering(Graph& g) : g_(g), ev_(g) {}

  Block lower(const std::vector<ScheduleContext::Item>& items, bool parallel) {
    std::vector<Block> blocks;
    blocks.reserve(items.size());
    for (const auto& item : items) {
      if (const auto* p = std::get_if<ScheduleContext::Play>(&item)) {
        Block b;
        b.segments[p->channel].push_back(p->root);
        b.duration = duration_of(p->root);
        blocks.push_back(std::move(b));
      } else {
        const auto& ctx = *std::get<std::unique_ptr<ScheduleContext>>(item);
        blocks.push_back(lower(ctx.items, ctx.parallel));
      }
    }
    return parallel ? join_parallel(blocks) : join_sequential(blocks);
  }

 private:
  Dur duration_of(NodeId id) {
    if (ev_.static_duration(id)) return {ev_.duration(id), {}};
    return std::visit(
        [&](const auto& x) -> Dur {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, node::Sequence>) {
            Dur acc{0.0, {}};
            for (NodeId c : x.children) acc = add(g_, acc, duration_of(c));
            return acc;
          } else if constexpr (std::is_same_v<T, node::Sum> ||
                               std::is_same_v<T, node::Product>) {
            for (NodeId o : x.operands) {
              if (ev_.is_waveform(o)) return duration_of(o);
            }
            return {0.0, {}};
          } else if constexpr (requires { x.duration; }) {
            return {std::nullopt, x.duration};
          } else {
            return {0.0, {}};
          }
        },
        g_.at(id));
  }

  void append_pad(std::vector<NodeId>& segs, const std::optional<Dur>& d) {
    if (d && !d->is_zero()) segs.push_back(g_.zero(as_node(g_, *d)));
  }

  Block join_sequential(std::vector<Block>& blocks) {
    Block out;
    std::set<std::string> channels;
    for (const auto& b : blocks) {
      for (const auto& [ch, segs] : b.segments) channels.insert(ch);
    }
    for (auto& b : blocks) {
      for (const auto& ch : channels) {
        auto& dst = out.segments[ch];
        if (auto it = b.segments.find(ch); it != b.segments.end()) {
          dst.insert(dst.end(), it->second.begin(), it->second.end());
        } else {
          append_pad(dst, b.duration);
        }
      }
      out.duration = add(g_, out.duration, b.duration);
    }
    return out;
  }

  Block join_parallel(std::vector<Block>& blocks) {
    Block out;
    std::vector<Dur> ds;
    for (const auto& b : blocks) ds.push_back(b.duration);
    out.duration = maximum(g_, ds);
    for (auto& b : blocks) {
      std::optional<Dur> tail;
      bool computed = false;
      for (auto& [ch, segs] : b.segments) {
        if (!computed) {
          tail = shortfall(g_, out.duration, b.duration);
          computed = true;
        }
        auto& dst = out.segments[ch];
        dst.insert(dst.end(), segs.begin(), segs.end());
        append_pad(dst, tail);
      }
    }
    return out;
  }

  Graph& g_;
  Evaluator ev_;
};

ParameterTable collect_parameters(const Graph& g,
                                  const std::vector<NodeId>& roots,
                                  NodeId total) {
  ParameterTable table;
  std::set<NodeId> seen;
  auto scan = [&](NodeId root) {
    for (NodeId id : post_order(g, root)) {
      if (const auto* v = g.get_if<node::Var>(id); v && seen.insert(id).second) {
        table[v->name].push_back(id);
      }
    }
  };
  for (NodeId r : roots) scan(r);
  scan(total);
  return table;
}

}  // namespace

Schedule::Schedule(std::shared_ptr<Graph> graph,
                   std::vector<std::string> channels, std::vector<NodeId> roots,
                   NodeId total_duration)
    : graph_(std::move(graph)),
      channels_(std::move(channels)),
      roots_(std::move(roots)),
      total_(total_duration) {
  if (channels_.size() != roots_.size()) {
    raise(ErrorCode::InvalidArgument, "channel and root counts differ");
  }
  parameters_ = collect_parameters(*graph_, roots_, total_);
}

bool Schedule::has_channel(std::string_view name) const {
  return std::find(channels_.begin(), channels_.end(), name) != channels_.end();
}

NodeId Schedule::root(std::string_view channel) const {
  auto it = std::find(channels_.begin(), channels_.end(), channel);
  if (it == channels_.end()) {
    raise(ErrorCode::UnknownChannel,
          "schedule has no channel '" + std::string(channel) + "'");
  }
  return roots_[static_cast<std::size_t>(it - channels_.begin())];
}

double Schedule::total_duration() const {
  return Evaluator(*graph_).scalar(total_);
}

ScheduleBuilder::ScheduleBuilder(std::vector<std::string> channels)
    : ScheduleBuilder(std::make_shared<Graph>(), std::move(channels)) {}

ScheduleBuilder::ScheduleBuilder(std::shared_ptr<Graph> graph,
                                 std::vector<std::string> channels)
    : graph_(std::move(graph)), declared_(std::move(channels)) {
  std::set<std::string> unique;
  for (const auto& c : declared_) {
    if (c.empty()) raise(ErrorCode::InvalidArgument, "empty channel name");
    if (!unique.insert(c).second) {
      raise(ErrorCode::InvalidArgument, "channel '" + c + "' declared twice");
    }
  }
}

ScheduleBuilder::~ScheduleBuilder() = default;
ScheduleBuilder::ScheduleBuilder(ScheduleBuilder&&) noexcept = default;
ScheduleBuilder& ScheduleBuilder::operator=(ScheduleBuilder&&) noexcept =
    default;

void ScheduleBuilder::open_sequential() {
  stack_.push_back(std::make_unique<ScheduleContext>());
}

void ScheduleBuilder::open_parallel() {
  auto ctx = std::make_unique<ScheduleContext>();
  ctx->parallel = true;
  stack_.push_back(std::move(ctx));
}

void ScheduleBuilder::close() {
  if (stack_.empty()) raise(ErrorCode::UnbalancedClose, "no open context");
  auto ctx = std::move(stack_.back());
  stack_.pop_back();
  if (stack_.empty()) {
    closed_.push_back(std::move(ctx));
    return;
  }
  auto& parent = *stack_.back();
  for (const auto& ch : ctx->channels) {
    if (!parent.channels.insert(ch).second && parent.parallel) {
      raise(ErrorCode::DuplicateChannelInParallel,
            "channel '" + ch + "' appears twice in a parallel context");
    }
  }
  parent.items.emplace_back(std::move(ctx));
}

void ScheduleBuilder::play(const std::string& channel, NodeId root) {
  if (stack_.empty()) {
    raise(ErrorCode::NoOpenContext, "play on '" + channel + "' outside a context");
  }
  if (channel.empty()) raise(ErrorCode::InvalidArgument, "empty channel name");
  if (!graph_->contains(root)) {
    raise(ErrorCode::DanglingRef, "played root is not in the schedule graph");
  }
  validate(*graph_, root);
  auto& top = *stack_.back();
  if (!top.channels.insert(channel).second && top.parallel) {
    raise(ErrorCode::DuplicateChannelInParallel,
          "channel '" + channel + "' appears twice in a parallel context");
  }
  if (std::find(played_.begin(), played_.end(), channel) == played_.end()) {
    played_.push_back(channel);
  }
  top.items.emplace_back(ScheduleContext::Play{channel, root});
}

std::size_t ScheduleBuilder::depth() const { return stack_.size(); }

Schedule ScheduleBuilder::finalize() {
  if (!stack_.empty()) {
    raise(ErrorCode::UnbalancedClose,
          std::to_string(stack_.size()) + " context(s) left open");
  }
  Graph& g = *graph_;
  std::vector<ScheduleContext::Item> top;
  for (auto& ctx : closed_) top.emplace_back(std::move(ctx));
  closed_.clear();
  Block block = Lowering(g).lower(top, false);

  std::vector<std::string> channels = declared_;
  for (const auto& c : played_) {
    if (std::find(channels.begin(), channels.end(), c) == channels.end()) {
      channels.push_back(c);
    }
  }
  const NodeId total = as_node(g, block.duration);
  std::vector<NodeId> roots;
  roots.reserve(channels.size());
  for (const auto& ch : channels) {
    auto it = block.segments.find(ch);
    NodeId root;
    if (it == block.segments.end() || it->second.empty()) {
      root = g.zero(total);
    } else if (it->second.size() == 1) {
      root = it->second.front();
    } else {
      root = g.sequence(it->second);
    }
    if (!block.duration.is_zero()) root = normalize(g, root);
    roots.push_back(root);
  }
  return Schedule(graph_, std::move(channels), std::move(roots), total);
}

Schedule tile(const Schedule& fragment, std::size_t n) {
  if (n == 0) raise(ErrorCode::InvalidArgument, "tile count must be positive");
  auto graph = fragment.shared_graph();
  Graph& g = *graph;
  std::vector<NodeId> roots;
  roots.reserve(fragment.roots().size());
  for (NodeId r : fragment.roots()) {
    roots.push_back(g.sequence(std::vector<NodeId>(n, r)));
  }
  const NodeId unit = fragment.total_duration_node();
  NodeId total = unit;
  if (const auto* d = g.get_if<node::Num>(unit)) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += d->value;
    total = g.num(acc);
  } else if (n > 1) {
    total = g.sum(std::vector<Arg>(n, unit));
  }
  return Schedule(std::move(graph), fragment.channels(), std::move(roots),
                  total);
}

void bind_parameters(Schedule& schedule, const Bindings& bindings) {
  // Both maps are sorted by name, so one merge walk pairs them up.
  const auto& table = schedule.parameters();
  std::vector<std::pair<const std::vector<NodeId>*, double>> plan;
  plan.reserve(bindings.size());
  auto row = table.begin();
  for (const auto& [name, value] : bindings) {
    while (row != table.end() && row->first < name) ++row;
    if (row == table.end() || row->first != name) {
      raise(ErrorCode::UnknownVariable, "no variable named '" + name + "'");
    }
    plan.emplace_back(&row->second, value);
  }
  for (const auto& [name, value] : bindings) {
    if (!std::isfinite(value)) {
      raise(ErrorCode::InvalidArgument,
            "binding for '" + name + "' is not finite");
    }
  }
  Graph& g = schedule.graph();
  for (const auto& [ids, value] : plan) {
    for (NodeId id : *ids) g.bind(id, value);
  }
}

void reset_parameters(Schedule& schedule) {
  Graph& g = schedule.graph();
  for (const auto& [name, ids] : schedule.parameters()) {
    for (NodeId id : ids) g.unbind(id);
  }
}

}  // namespace pulsegraph
