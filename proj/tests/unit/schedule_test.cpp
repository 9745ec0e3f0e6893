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


#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "errors.hpp"
#include "pulsegraph/evaluate.hpp"
#include "pulsegraph/schedule.hpp"
#include "random_graph.hpp"

namespace pulsegraph {
namespace {

using testgen::code_of;

NodeId pulse(Graph& g, double d, double amp = 0.5) {
  return g.product({amp, g.sine(1e6, 0.0, d)});
}

double channel_duration(const Schedule& s, const std::string& ch) {
  return duration(s.graph(), s.root(ch));
}

TEST(Schedule, ParallelTakesLongestBranch) {
  ScheduleBuilder b;
  Graph& g = b.graph();
  b.open_parallel();
  b.play("ch0", pulse(g, 1e-6));
  b.play("ch1", pulse(g, 2e-6));
  b.close();
  Schedule s = b.finalize();
  EXPECT_DOUBLE_EQ(s.total_duration(), 2e-6);
  EXPECT_DOUBLE_EQ(channel_duration(s, "ch0"), 2e-6);
  EXPECT_DOUBLE_EQ(channel_duration(s, "ch1"), 2e-6);
}

TEST(Schedule, ShortBranchGetsTailPadding) {
  ScheduleBuilder b;
  Graph& g = b.graph();
  b.open_parallel();
  NodeId p = pulse(g, 1e-6);
  b.play("ch0", p);
  b.play("ch1", pulse(g, 2e-6));
  b.close();
  Schedule s = b.finalize();
  const auto& seq = std::get<node::Sequence>(s.graph().at(s.root("ch0")));
  ASSERT_EQ(seq.children.size(), 2u);
  EXPECT_EQ(s.graph().kind(seq.children[0]), NodeKind::Product);
  EXPECT_EQ(s.graph().kind(seq.children[1]), NodeKind::Zero);
  EXPECT_DOUBLE_EQ(duration(s.graph(), seq.children[1]), 1e-6);
}

TEST(Schedule, SequentialOnOneChannel) {
  ScheduleBuilder b;
  Graph& g = b.graph();
  NodeId a = pulse(g, 1e-6, 0.5);
  NodeId c = pulse(g, 2e-6, 0.25);
  b.open_sequential();
  b.play("ch0", a);
  b.play("ch0", c);
  b.close();
  Schedule s = b.finalize();
  const auto& seq = std::get<node::Sequence>(s.graph().at(s.root("ch0")));
  EXPECT_EQ(seq.children, (std::vector<NodeId>{a, c}));
}

TEST(Schedule, PlayOutsideContext) {
  ScheduleBuilder b;
  NodeId p = pulse(b.graph(), 1e-6);
  EXPECT_EQ(code_of([&] { b.play("ch0", p); }), ErrorCode::NoOpenContext);
}

TEST(Schedule, UnbalancedClose) {
  ScheduleBuilder b;
  EXPECT_EQ(code_of([&] { b.close(); }), ErrorCode::UnbalancedClose);
  ScheduleBuilder open;
  open.open_sequential();
  EXPECT_EQ(code_of([&] { open.finalize(); }), ErrorCode::UnbalancedClose);
}

TEST(Schedule, DuplicateChannelInParallel) {
  ScheduleBuilder b;
  Graph& g = b.graph();
  b.open_parallel();
  b.play("ch0", pulse(g, 1e-6));
  NodeId p = pulse(g, 1e-6);
  EXPECT_EQ(code_of([&] { b.play("ch0", p); }),
            ErrorCode::DuplicateChannelInParallel);
}

TEST(Schedule, DuplicateChannelAcrossNestedBranches) {
  ScheduleBuilder b;
  Graph& g = b.graph();
  b.open_parallel();
  b.open_sequential();
  b.play("ch0", pulse(g, 1e-6));
  b.close();
  b.open_sequential();
  b.play("ch0", pulse(g, 1e-6));
  EXPECT_EQ(code_of([&] { b.close(); }), ErrorCode::DuplicateChannelInParallel);
}

TEST(Schedule, UnaddressedChannelIsZero) {
  ScheduleBuilder b({"ch0", "ch1"});
  Graph& g = b.graph();
  b.open_sequential();
  b.play("ch0", pulse(g, 3e-6));
  b.close();
  Schedule s = b.finalize();
  ASSERT_EQ(s.graph().kind(s.root("ch1")), NodeKind::Zero);
  EXPECT_DOUBLE_EQ(channel_duration(s, "ch1"), 3e-6);
}

TEST(Schedule, EmptyBuilder) {
  ScheduleBuilder b({"a", "b"});
  Schedule s = b.finalize();
  EXPECT_EQ(s.total_duration(), 0.0);
  for (const auto& ch : s.channels()) {
    EXPECT_EQ(s.graph().kind(s.root(ch)), NodeKind::Zero);
    EXPECT_EQ(channel_duration(s, ch), 0.0);
  }
}

TEST(Schedule, ChannelOrderAndLookup) {
  ScheduleBuilder b({"z"});
  Graph& g = b.graph();
  b.open_parallel();
  b.play("b", pulse(g, 1e-6));
  b.play("a", pulse(g, 1e-6));
  b.close();
  Schedule s = b.finalize();
  EXPECT_EQ(s.channels(), (std::vector<std::string>{"z", "b", "a"}));
  EXPECT_TRUE(s.has_channel("a"));
  EXPECT_EQ(code_of([&] { s.root("nope"); }), ErrorCode::UnknownChannel);
}

TEST(Schedule, NestedContexts) {
  ScheduleBuilder b;
  Graph& g = b.graph();
  b.open_sequential();
  b.open_parallel();
  b.play("ch0", pulse(g, 1e-6));
  b.open_sequential();
  b.play("ch1", pulse(g, 1e-6));
  b.play("ch1", pulse(g, 2e-6));
  b.close();
  b.close();
  b.play("ch0", pulse(g, 1e-6));
  b.close();
  Schedule s = b.finalize();
  EXPECT_DOUBLE_EQ(s.total_duration(), 4e-6);
  EXPECT_DOUBLE_EQ(channel_duration(s, "ch0"), 4e-6);
  EXPECT_DOUBLE_EQ(channel_duration(s, "ch1"), 4e-6);
  // ch0 is silent between its two pulses.
  EXPECT_EQ(evaluate_at(s.graph(), s.root("ch0"), 2e-6), 0.0);
}

TEST(Schedule, SymbolicPadding) {
  ScheduleBuilder b;
  Graph& g = b.graph();
  b.open_parallel();
  b.play("ch0", g.product({0.5, g.sine(1e6, 0.0, g.var("d0"))}));
  b.play("ch1", g.product({0.5, g.sine(1e6, 0.0, g.var("d1"))}));
  b.close();
  Schedule s = b.finalize();
  EXPECT_EQ(s.parameter_count(), 2u);
  for (auto [d0, d1] : {std::pair{1e-6, 2e-6}, std::pair{3e-6, 0.5e-6}}) {
    bind_parameters(s, {{"d0", d0}, {"d1", d1}});
    const double total = std::max(d0, d1);
    EXPECT_DOUBLE_EQ(s.total_duration(), total);
    EXPECT_DOUBLE_EQ(channel_duration(s, "ch0"), total);
    EXPECT_DOUBLE_EQ(channel_duration(s, "ch1"), total);
  }
}

TEST(Schedule, BindUnknownParameter) {
  ScheduleBuilder b;
  b.open_sequential();
  b.play("ch0", b.graph().product({b.graph().var("amp"), b.graph().sine(1e6, 0.0, 1e-6)}));
  b.close();
  Schedule s = b.finalize();
  EXPECT_EQ(code_of([&] { bind_parameters(s, {{"nope", 1.0}}); }),
            ErrorCode::UnknownVariable);
  bind_parameters(s, {{"amp", 0.5}});
  EXPECT_NO_THROW(sample(s.graph(), s.root("ch0"), 1e8));
  reset_parameters(s);
  EXPECT_EQ(code_of([&] { sample(s.graph(), s.root("ch0"), 1e8); }),
            ErrorCode::UnboundVar);
}

TEST(Tile, SharesTheFragment) {
  ScheduleBuilder b;
  Graph& g = b.graph();
  b.open_sequential();
  b.play("ch0", pulse(g, 1e-6, 0.5));
  b.play("ch0", pulse(g, 2e-6, 0.25));
  b.play("ch0", pulse(g, 1e-6, 0.125));
  b.close();
  Schedule unit = b.finalize();
  const std::size_t before = unit.graph().size();
  Schedule tiled = tile(unit, 200);
  const auto& seq = std::get<node::Sequence>(tiled.graph().at(tiled.root("ch0")));
  EXPECT_EQ(seq.children.size(), 200u);
  EXPECT_LT(tiled.graph().size(), before + 200 + 4);
  EXPECT_NEAR(tiled.total_duration(), 200 * 4e-6, 1e-17);  // 200 rounded additions
  EXPECT_DOUBLE_EQ(channel_duration(tiled, "ch0"), tiled.total_duration());
}

TEST(Tile, OnceIsTheFragment) {
  ScheduleBuilder b({"ch0", "ch1"});
  Graph& g = b.graph();
  b.open_parallel();
  b.play("ch0", pulse(g, 1e-6));
  b.play("ch1", pulse(g, 0.5e-6));
  b.close();
  Schedule unit = b.finalize();
  Schedule once = tile(unit, 1);
  for (const auto& ch : unit.channels()) {
    EXPECT_EQ(sample(unit.graph(), unit.root(ch), 1e9).samples,
              sample(once.graph(), once.root(ch), 1e9).samples);
  }
}

TEST(Schedule, VqaStyleParameterCount) {
  ScheduleBuilder b;
  Graph& g = b.graph();
  b.open_sequential();
  for (int layer = 0; layer < 10; ++layer) {
    b.open_parallel();
    for (int ch = 0; ch < 8; ++ch) {
      const std::string name = "d_" + std::to_string(layer) + "_" + std::to_string(ch);
      b.play("ch" + std::to_string(ch), g.product({0.5, g.sine(1e6, 0.0, g.var(name))}));
    }
    b.close();
  }
  b.close();
  Schedule s = b.finalize();
  EXPECT_EQ(s.parameter_count(), 80u);
}

// Random nested schedule on ch0..ch2, optionally next to a short pulse on
// an extra channel.
Schedule random_schedule(int seed, bool extra) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  ScheduleBuilder b;
  Graph& g = b.graph();
  testgen::Options opt;
  opt.zero_durations = false;
  testgen::GraphGen gen(g, seed, opt);
  std::function<void(int)> emit = [&](int depth) {
    const bool parallel = pick(0, 1) == 1;
    parallel ? b.open_parallel() : b.open_sequential();
    std::vector<int> used;
    const int items = pick(1, 3);
    for (int i = 0; i < items; ++i) {
      if (!parallel && depth > 0 && pick(0, 2) == 0) {
        emit(depth - 1);
        continue;
      }
      const int ch = pick(0, 2);
      if (parallel && std::find(used.begin(), used.end(), ch) != used.end()) {
        continue;
      }
      used.push_back(ch);
      b.play("ch" + std::to_string(ch), gen.any());
    }
    b.close();
  };
  b.open_parallel();
  b.open_sequential();
  emit(2);
  b.close();
  if (extra) b.play("extra", g.constant(0.5, testgen::kUnit));
  b.close();
  return b.finalize();
}

TEST(Schedule, RandomScheduleInvariants) {
  for (int trial = 0; trial < 100; ++trial) {
    Schedule plain = random_schedule(4000 + trial, false);
    Schedule padded = random_schedule(4000 + trial, true);
    for (const auto& ch : plain.channels()) {
      ASSERT_EQ(channel_duration(plain, ch), plain.total_duration()) << trial;
      auto a = sample(plain.graph(), plain.root(ch), testgen::kSampleRate);
      auto b = sample(padded.graph(), padded.root(ch), testgen::kSampleRate);
      ASSERT_LE(a.size(), b.size());
      b.samples.resize(a.size());
      ASSERT_EQ(a.samples, b.samples) << trial << " " << ch;
    }
    for (const auto& ch : padded.channels()) {
      ASSERT_EQ(channel_duration(padded, ch), padded.total_duration()) << trial;
    }
  }
}

}  // namespace
}  // namespace pulsegraph
