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

#include "errors.hpp"
#include "pulsegraph/ad9910.hpp"
#include "pulsegraph/schedule.hpp"

namespace pulsegraph {
namespace {

using testgen::code_of;
constexpr double kPi = std::numbers::pi;

TEST(Ad9910, ZeroBecomesConstDC) {
  Graph g;
  auto rec = transpile_ad9910(g, g.zero(5e-6));
  EXPECT_EQ(std::get<ConstDC>(rec), (ConstDC{0.0, 5e-6}));
}

TEST(Ad9910, ScaledSineBecomesSingleTone) {
  Graph g;
  NodeId root = g.product({0.5, g.sine(10e6, kPi / 4.0, 1e-6)});
  auto rec = transpile_ad9910(g, root);
  EXPECT_EQ(std::get<SingleTone>(rec),
            (SingleTone{10e6, kPi / 4.0, 0.5, 1e-6, false}));
}

TEST(Ad9910, AmplitudeOnEitherSide) {
  Graph g;
  NodeId root = g.product({g.sine(10e6, 0.0, 1e-6), 0.5});
  EXPECT_EQ(std::get<SingleTone>(transpile_ad9910(g, root)).amplitude, 0.5);
}

TEST(Ad9910, BareSineHasFullAmplitude) {
  Graph g;
  auto tone = std::get<SingleTone>(transpile_ad9910(g, g.sine(1e6, 0.0, 1e-6)));
  EXPECT_EQ(tone.amplitude, 1.0);
}

TEST(Ad9910, CosineIsRewritten) {
  Graph g;
  auto tone = std::get<SingleTone>(transpile_ad9910(g, g.cosine(1e6, 0.0, 1e-6)));
  EXPECT_DOUBLE_EQ(tone.phase, kPi / 2.0);
}

TEST(Ad9910, ClockedFrequencySteps) {
  Graph g;
  NodeId f = g.sequence({g.constant(1e6, 1e-6), g.constant(2e6, 1e-6)});
  NodeId root = g.sine(f, 0.0, 2e-6, g.clock("c"));
  auto rec = std::get<DiscreteSine>(transpile_ad9910(g, root));
  EXPECT_TRUE(rec.phase_continuous);
  const auto& steps = std::get<StepWaveform>(rec.frequency);
  ASSERT_EQ(steps.steps.size(), 2u);
  EXPECT_EQ(steps.steps[0], (ConstDC{1e6, 1e-6}));
  EXPECT_EQ(steps.steps[1], (ConstDC{2e6, 1e-6}));
  EXPECT_EQ(std::get<double>(rec.amplitude), 1.0);
  EXPECT_DOUBLE_EQ(rec.duration, 2e-6);
}

TEST(Ad9910, StepCountMatchesSequenceArity) {
  for (int n = 2; n <= 9; ++n) {
    Graph g;
    std::vector<NodeId> steps;
    for (int i = 0; i < n; ++i) steps.push_back(g.constant(0.1 * (i % 2 + 1), 1e-7));
    NodeId root = g.product({g.sequence(steps), g.sine(5e6, 0.0, n * 1e-7)});
    auto rec = std::get<DiscreteSine>(transpile_ad9910(g, root));
    EXPECT_EQ(std::get<StepWaveform>(rec.amplitude).steps.size(),
              static_cast<std::size_t>(n));
  }
}

TEST(Ad9910, EqualStepsMergeIntoASingleTone) {
  Graph g;
  NodeId amp = g.sequence({g.constant(0.3, 1e-6), g.constant(0.3, 1e-6)});
  NodeId root = g.product({amp, g.sine(5e6, 0.0, 2e-6)});
  auto tone = std::get<SingleTone>(transpile_ad9910(g, root));
  EXPECT_EQ(tone.amplitude, 0.3);
}

TEST(Ad9910, BoundVariables) {
  Graph g;
  NodeId root = g.product({g.var("a"), g.sine(g.var("f"), 0.0, 1e-6)});
  g.bind(*g.find_var("a"), 0.25);
  g.bind(*g.find_var("f"), 3e6);
  auto tone = std::get<SingleTone>(transpile_ad9910(g, root));
  EXPECT_EQ(tone.amplitude, 0.25);
  EXPECT_EQ(tone.frequency, 3e6);
}

TEST(Ad9910, UnboundVariable) {
  Graph g;
  NodeId root = g.product({g.var("a"), g.sine(1e6, 0.0, 1e-6)});
  EXPECT_EQ(code_of([&] { transpile_ad9910(g, root); }), ErrorCode::UnboundVar);
}

TEST(Ad9910, FrequencyOutOfRange) {
  Graph g;
  EXPECT_EQ(code_of([&] { transpile_ad9910(g, g.sine(401e6, 0.0, 1e-6)); }),
            ErrorCode::FrequencyOutOfRange);
  EXPECT_EQ(code_of([&] { transpile_ad9910(g, g.sine(-1.0, 0.0, 1e-6)); }),
            ErrorCode::FrequencyOutOfRange);
}

TEST(Ad9910, AmplitudeOutOfRange) {
  Graph g;
  NodeId root = g.product({1.5, g.sine(1e6, 0.0, 1e-6)});
  EXPECT_EQ(code_of([&] { transpile_ad9910(g, root); }),
            ErrorCode::AmplitudeOutOfRange);
}

TEST(Ad9910, TooManySteps) {
  Ad9910Config config;
  config.ram_slots = 4;
  Graph g;
  std::vector<NodeId> steps;
  for (int i = 0; i < 5; ++i) steps.push_back(g.constant(1e6 * (i + 1), 1e-7));
  NodeId root = g.sine(g.sequence(steps), 0.0, 5e-7);
  EXPECT_EQ(code_of([&] { transpile_ad9910(g, root, config); }),
            ErrorCode::TooManySteps);
}

TEST(Ad9910, OneSteppedParameterAtMost) {
  Graph g;
  NodeId f = g.sequence({g.constant(1e6, 1e-6), g.constant(2e6, 1e-6)});
  NodeId a = g.sequence({g.constant(0.2, 1e-6), g.constant(0.4, 1e-6)});
  NodeId root = g.product({a, g.sine(f, 0.0, 2e-6)});
  EXPECT_EQ(code_of([&] { transpile_ad9910(g, root); }),
            ErrorCode::MultiParamModulation);
}

TEST(Ad9910, StepsMustSpanThePulse) {
  Graph g;
  NodeId f = g.sequence({g.constant(1e6, 1e-6), g.constant(2e6, 1e-6)});
  NodeId root = g.sine(f, 0.0, 3e-6);
  EXPECT_EQ(code_of([&] { transpile_ad9910(g, root); }), ErrorCode::MixedDuration);
}

TEST(Ad9910, ForeignShapes) {
  Graph g;
  for (NodeId root : {g.gauss(1.0, 0.5e-6, 1e-7, 1e-6), g.constant(0.3, 1e-6),
                      g.sum({g.sine(1e6, 0.0, 1e-6), g.sine(2e6, 0.0, 1e-6)}),
                      g.sequence({g.sine(1e6, 0.0, 1e-6), g.zero(1e-6)}),
                      g.product({g.sine(1e6, 0.0, 1e-6), g.sine(2e6, 0.0, 1e-6)})}) {
    EXPECT_EQ(code_of([&] { transpile_ad9910(g, root); }), ErrorCode::NoMatch)
        << kind_name(g.kind(root));
  }
}

TEST(Ad9910, EmptyGraphIsSilent) {
  Graph g;
  auto rec = transpile_ad9910(g, g.sequence({g.zero(0.0)}));
  EXPECT_EQ(std::get<ConstDC>(rec), (ConstDC{0.0, 0.0}));
}

TEST(Quantize, GoldenWords) {
  // From tests/oracles/quantization_oracle.py
  EXPECT_EQ(frequency_word(10e6), 42949673u);
  EXPECT_EQ(phase_word(kPi / 4.0), 8192u);
  EXPECT_EQ(amplitude_word(1.0), 16383u);
}

TEST(Quantize, EdgesAndWrapping) {
  EXPECT_EQ(frequency_word(0.0), 0u);
  EXPECT_EQ(frequency_word(400e6), 1717986918u);
  EXPECT_EQ(phase_word(0.0), 0u);
  EXPECT_EQ(phase_word(2.0 * kPi), 0u);
  EXPECT_EQ(phase_word(-kPi / 2.0), 49152u);
  EXPECT_EQ(phase_word(kPi), 32768u);
  EXPECT_EQ(amplitude_word(0.5), 8192u);
  EXPECT_EQ(amplitude_word(-0.5), 8192u);
  EXPECT_EQ(amplitude_word(0.0), 0u);
}

TEST(Quantize, NegativeAmplitudeFoldsIntoPhase) {
  auto words = quantize(10e6, 0.0, -1.0);
  EXPECT_EQ(words.asf, 16383u);
  EXPECT_EQ(words.pow, 32768u);
}

TEST(Quantize, SingleToneRegisters) {
  SingleTone tone{10e6, kPi / 4.0, 0.5, 1e-6, false};
  EXPECT_EQ(quantize_registers(tone), (RegisterWords{42949673u, 8192u, 8192u}));
}

TEST(Ad9910, ScheduleTranspile) {
  ScheduleBuilder b({"dds0", "dds1"});
  Graph& g = b.graph();
  b.open_sequential();
  b.play("dds0", g.product({0.5, g.sine(10e6, 0.0, 1e-6)}));
  b.play("dds0", g.sine(20e6, 0.0, 2e-6));
  b.close();
  Schedule s = b.finalize();
  auto program = transpile_schedule_ad9910(s);
  ASSERT_EQ(program.at("dds0").size(), 2u);
  EXPECT_EQ(std::get<SingleTone>(program.at("dds0")[1]).frequency, 20e6);
  ASSERT_EQ(program.at("dds1").size(), 1u);
  EXPECT_EQ(std::get<ConstDC>(program.at("dds1")[0]), (ConstDC{0.0, 3e-6}));
  double total = 0.0;
  for (const auto& r : program.at("dds0")) total += record_duration(r);
  EXPECT_DOUBLE_EQ(total, s.total_duration());
}

TEST(Ad9910, ScheduleErrorsNameTheChannel) {
  ScheduleBuilder b;
  Graph& g = b.graph();
  b.open_sequential();
  b.play("dds0", g.gauss(1.0, 0.5e-6, 1e-7, 1e-6));
  b.close();
  Schedule s = b.finalize();
  try {
    transpile_schedule_ad9910(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoMatch);
    EXPECT_NE(std::string(e.what()).find("dds0"), std::string::npos);
  }
}

}  // namespace
}  // namespace pulsegraph
