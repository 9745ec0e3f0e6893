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

#include <cmath>
#include <numbers>
#include <random>

#include "errors.hpp"
#include "fixtures.hpp"
#include "pulsegraph/evaluate.hpp"
#include "pulsegraph/transform.hpp"

namespace pulsegraph {
namespace {

using testgen::code_of;
constexpr double kPi = std::numbers::pi;

void expect_same_samples(const Graph& g, NodeId a, NodeId b, double rate,
                         double tol = 0.0) {
  auto wa = sample(g, a, rate);
  auto wb = sample(g, b, rate);
  ASSERT_EQ(wa.size(), wb.size());
  for (std::size_t k = 0; k < wa.size(); ++k) {
    ASSERT_NEAR(wa.samples[k], wb.samples[k], tol) << "sample " << k;
  }
}

TEST(Visit, RampedToneEndsAtRoot) {
  Graph g;
  NodeId root = testgen::ramped_tone(g);
  std::vector<NodeId> order;
  visit_depth_first(g, root, [&](NodeId id, const auto&) { order.push_back(id); });
  ASSERT_FALSE(order.empty());
  EXPECT_EQ(order.back(), root);
  EXPECT_EQ(g.kind(order.back()), NodeKind::Product);
}

TEST(Visit, SingleNode) {
  Graph g;
  NodeId z = g.zero(1e-6);
  int zeros = 0;
  int total = 0;
  visit_depth_first(g, z, [&](NodeId, const auto& n) {
    zeros += std::is_same_v<std::decay_t<decltype(n)>, node::Zero>;
    ++total;
  });
  EXPECT_EQ(zeros, 1);
  EXPECT_EQ(total, 2);  // the duration literal is a node too
}

struct KindCounter {
  int sines = 0;
  int other = 0;
  void operator()(NodeId, const node::Sine&) { ++sines; }
  template <class T>
  void operator()(NodeId, const T&) {
    ++other;
  }
};

TEST(Visit, DispatchesOnKind) {
  Graph g;
  NodeId s = g.sine(1e6, 0.0, 1e-6);
  NodeId root = g.sum({s, g.constant(0.5, 1e-6)});
  KindCounter counter;
  visit_depth_first(g, root, std::ref(counter));
  EXPECT_EQ(counter.sines, 1);
  EXPECT_GT(counter.other, 0);
}

TEST(Visit, SharedNodeVisitedOnce) {
  Graph g;
  NodeId shared = g.constant(1.0, 1e-6);
  NodeId root = g.sequence({g.product({0.5, shared}), g.product({0.25, shared})});
  int hits = 0;
  visit_depth_first(g, root, [&](NodeId id, const auto&) { hits += id == shared; });
  EXPECT_EQ(hits, 1);
}

TEST(Rewrite, NoChangeAllocatesNothing) {
  Graph g;
  NodeId root = testgen::ramped_tone(g);
  const auto size = g.size();
  EXPECT_EQ(rewrite(g, root, [](Graph&, NodeId) { return std::nullopt; }), root);
  EXPECT_EQ(g.size(), size);
}

TEST(RemoveZeroDuration, DropsZeroChild) {
  Graph g;
  NodeId a = g.constant(1.0, 1e-6);
  NodeId b = g.constant(2.0, 2e-6);
  NodeId root = g.sequence({a, g.zero(0.0), b});
  NodeId out = remove_zero_duration(g, root);
  const auto* seq = g.get_if<node::Sequence>(out);
  ASSERT_NE(seq, nullptr);
  EXPECT_EQ(seq->children, (std::vector<NodeId>{a, b}));
}

TEST(RemoveZeroDuration, CollapsesSingleChild) {
  Graph g;
  NodeId a = g.constant(1.0, 1e-6);
  NodeId root = g.sequence({g.zero(0.0), a});
  NodeId out = remove_zero_duration(g, root);
  EXPECT_EQ(out, a);
  expect_same_samples(g, root, out, 1e9);
}

TEST(RemoveZeroDuration, IdentityWithoutZeros) {
  Graph g;
  NodeId root = testgen::ramped_tone(g);
  EXPECT_EQ(remove_zero_duration(g, root), root);
}

TEST(RemoveZeroDuration, EntirelyEmpty) {
  Graph g;
  NodeId root = g.sequence({g.zero(0.0), g.constant(1.0, 0.0)});
  EXPECT_EQ(code_of([&] { remove_zero_duration(g, root); }), ErrorCode::EmptyResult);
}

TEST(RemoveZeroDuration, KeepsVariableDurations) {
  Graph g;
  NodeId v = g.var("t");
  g.bind(v, 0.0);
  NodeId a = g.constant(1.0, 1e-6);
  NodeId root = g.sequence({g.zero(v), a});
  // Zero under this binding only, so the child must survive rebinding.
  EXPECT_EQ(remove_zero_duration(g, root), root);
}

TEST(CosineToSine, LiteralPhase) {
  Graph g;
  NodeId root = g.cosine(1e6, 0.0, 1e-6);
  NodeId out = cosine_to_sine(g, root);
  const auto* s = g.get_if<node::Sine>(out);
  ASSERT_NE(s, nullptr);
  EXPECT_DOUBLE_EQ(std::get<node::Num>(g.at(s->phase)).value, kPi / 2.0);
  expect_same_samples(g, root, out, 64e6, 1e-12);
}

TEST(CosineToSine, VariablePhase) {
  Graph g;
  NodeId p = g.var("p");
  NodeId root = g.cosine(1e6, p, 1e-6);
  NodeId out = cosine_to_sine(g, root);
  const auto& s = std::get<node::Sine>(g.at(out));
  ASSERT_EQ(g.kind(s.phase), NodeKind::Sum);
  g.bind(p, 0.0);
  expect_same_samples(g, root, out, 64e6, 1e-12);
  g.bind(p, 0.3);
  expect_same_samples(g, root, out, 64e6, 1e-12);
}

TEST(CosineToSine, NoCosine) {
  Graph g;
  NodeId root = testgen::ramped_tone(g);
  EXPECT_EQ(cosine_to_sine(g, root), root);
}

TEST(FoldConstants, ProductOfLiterals) {
  Graph g;
  NodeId out = fold_constants(g, g.product({2.0, 3.0}));
  EXPECT_EQ(std::get<node::Num>(g.at(out)).value, 6.0);
}

TEST(FoldConstants, SumWithVariable) {
  Graph g;
  NodeId x = g.var("x");
  NodeId root = g.sum({1.0, x, 2.0});
  NodeId out = fold_constants(g, root);
  const auto& s = std::get<node::Sum>(g.at(out));
  ASSERT_EQ(s.operands.size(), 2u);
  EXPECT_EQ(std::get<node::Num>(g.at(s.operands[0])).value, 3.0);
  EXPECT_EQ(s.operands[1], x);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int i = 0; i < 20; ++i) {
    g.bind(x, dist(rng));
    EXPECT_EQ(evaluate_at(g, root, 0.0), evaluate_at(g, out, 0.0));
  }
}

TEST(FoldConstants, MultiplicativeIdentity) {
  Graph g;
  NodeId s = g.sine(1e6, 0.0, 1e-6);
  EXPECT_EQ(fold_constants(g, g.product({1.0, s})), s);
  EXPECT_EQ(fold_constants(g, g.sum({s, 0.0})), s);
}

TEST(FoldConstants, MaxOfLiterals) {
  Graph g;
  NodeId out = fold_constants(g, g.max({1.0, 4.0, -2.0}));
  EXPECT_EQ(std::get<node::Num>(g.at(out)).value, 4.0);
}

TEST(MergeIdenticalConsts, EqualNeighbours) {
  Graph g;
  NodeId root = g.sequence({g.constant(0.5, 1e-6), g.constant(0.5, 2e-6)});
  NodeId out = merge_identical_consts(g, root);
  const auto* k = g.get_if<node::Const>(out);
  ASSERT_NE(k, nullptr);
  EXPECT_DOUBLE_EQ(evaluate_at(g, k->duration, 0.0), 3e-6);
  EXPECT_EQ(evaluate_at(g, k->value, 0.0), 0.5);
}

TEST(MergeIdenticalConsts, DifferentValues) {
  Graph g;
  NodeId root = g.sequence({g.constant(0.5, 1e-6), g.constant(0.6, 1e-6)});
  EXPECT_EQ(merge_identical_consts(g, root), root);
}

TEST(MergeIdenticalConsts, FiveEqualConsts) {
  Graph g;
  std::vector<NodeId> children;
  for (int i = 0; i < 5; ++i) children.push_back(g.constant(0.25, 0x1p-20));
  NodeId root = g.sequence(children);
  NodeId out = merge_identical_consts(g, root);
  ASSERT_EQ(g.kind(out), NodeKind::Const);
  EXPECT_EQ(duration(g, out), 5 * 0x1p-20);
  expect_same_samples(g, root, out, 0x1p24);
}

TEST(MergeIdenticalConsts, WithinRelativeTolerance) {
  Graph g;
  NodeId root = g.sequence({g.constant(0.5, 1e-6),
                            g.constant(0.5 * (1.0 + 1e-13), 1e-6),
                            g.constant(0.5 * (1.0 + 1e-9), 1e-6)});
  NodeId out = merge_identical_consts(g, root);
  ASSERT_EQ(g.kind(out), NodeKind::Sequence);
  EXPECT_EQ(std::get<node::Sequence>(g.at(out)).children.size(), 2u);
}

TEST(Normalize, FixedOrder) {
  Graph g;
  NodeId root = g.sequence({g.zero(0.0),
                            g.product({1.0, g.cosine(1e6, 0.0, 1e-6)})});
  NodeId out = normalize(g, root);
  EXPECT_EQ(g.kind(out), NodeKind::Sine);
}

TEST(Substitute, BindAndRebind) {
  Graph g;
  NodeId amp = g.var("amp");
  NodeId root = g.product({amp, g.sine(1e6, kPi / 2.0, 1e-6)});
  substitute(g, root, {{"amp", 0.5}});
  EXPECT_DOUBLE_EQ(evaluate_at(g, root, 0.0), 0.5);
  substitute(g, root, {{"amp", 0.7}});
  EXPECT_DOUBLE_EQ(evaluate_at(g, root, 0.0), 0.7);
}

TEST(Substitute, UnknownName) {
  Graph g;
  NodeId root = g.product({g.var("amp"), g.sine(1e6, 0.0, 1e-6)});
  EXPECT_EQ(code_of([&] { substitute(g, root, {{"nope", 1.0}}); }),
            ErrorCode::UnknownVariable);
  // Nothing was bound.
  EXPECT_FALSE(std::get<node::Var>(g.at(*g.find_var("amp"))).bound);
}

TEST(Substitute, VarOutsideTheRootIsUnknown) {
  Graph g;
  g.var("elsewhere");
  NodeId root = g.product({g.var("amp"), g.sine(1e6, 0.0, 1e-6)});
  EXPECT_EQ(code_of([&] { substitute(g, root, {{"elsewhere", 1.0}}); }),
            ErrorCode::UnknownVariable);
}

TEST(ResetBindings, ThenEvaluate) {
  Graph g;
  NodeId root = g.product({g.var("amp"), g.sine(1e6, 0.0, 1e-6)});
  substitute(g, root, {{"amp", 0.5}});
  reset_bindings(g, root);
  EXPECT_EQ(code_of([&] { evaluate_at(g, root, 0.0); }), ErrorCode::UnboundVar);
}

TEST(ResetBindings, ConcreteGraph) {
  Graph g;
  NodeId root = testgen::ramped_tone(g);
  EXPECT_NO_THROW(reset_bindings(g, root));
  EXPECT_NO_THROW(sample(g, root, 1e8));
}

TEST(ResetBindings, BindResetBind) {
  Graph g;
  NodeId root = g.product({g.var("amp"), g.sine(g.var("f"), 0.3, 1e-6)});
  substitute(g, root, {{"amp", 0.9}, {"f", 3e6}});
  reset_bindings(g, root);
  substitute(g, root, {{"amp", 0.4}, {"f", 2e6}});

  Graph fresh;
  NodeId expected = fresh.product({0.4, fresh.sine(2e6, 0.3, 1e-6)});
  auto a = sample(g, root, 1e8);
  auto b = sample(fresh, expected, 1e8);
  EXPECT_EQ(a.samples, b.samples);
}

TEST(VariableNames, SortedAndUnique) {
  Graph g;
  NodeId root = g.product({g.var("b"), g.sine(g.var("a"), g.var("b"), 1e-6)});
  EXPECT_EQ(variable_names(g, root), (std::vector<std::string>{"a", "b"}));
}

TEST(DetectClock, TemplateWithAndWithoutClock) {
  Graph g;
  NodeId with = g.product({0.5, g.sine(1e6, 0.0, 1e-6, g.clock("c"))});
  NodeId without = g.product({0.5, g.sine(1e6, 0.0, 1e-6)});
  EXPECT_TRUE(detect_clock(g, with));
  EXPECT_FALSE(detect_clock(g, without));
  EXPECT_FALSE(detect_clock(g, g.zero(1e-6)));
}

TEST(StructurallyEqual, AcrossArenas) {
  Graph a;
  Graph b;
  NodeId ra = testgen::ramped_tone(a);
  b.num(99.0);  // shift node ids
  NodeId rb = testgen::ramped_tone(b);
  EXPECT_TRUE(structurally_equal(a, ra, b, rb));
  NodeId rc = testgen::ramped_tone(b, 1e-6, 3e-6, 1e-6);
  EXPECT_FALSE(structurally_equal(a, ra, b, rc));
}

}  // namespace
}  // namespace pulsegraph
