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
#include <sstream>
#include <string>

#include "pulsegraph/evaluate.hpp"
#include "pulsegraph/transform.hpp"
#include "random_graph.hpp"

namespace pulsegraph::testgen {

using Pass = NodeId (*)(Graph&, NodeId);

struct NamedPass {
  const char* name;
  Pass pass;
  double tolerance;  // absolute, per sample
};

inline constexpr NamedPass kPasses[] = {
    {"remove_zero_duration", remove_zero_duration, 0.0},
    {"cosine_to_sine", cosine_to_sine, 1e-12},
    {"fold_constants", fold_constants, 0.0},
    {"merge_identical_consts", merge_identical_consts, 0.0},
    {"normalize", normalize, 1e-12},
};

inline std::string compare_samples(const SampledWaveform& a, const SampledWaveform& b,
                                   double tolerance) {
  if (a.size() != b.size()) {
    return "length " + std::to_string(a.size()) + " vs " + std::to_string(b.size());
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(std::abs(a.samples[k] - b.samples[k]) <= tolerance)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "sample " << k << ": " << a.samples[k] << " vs " << b.samples[k];
      return msg.str();
    }
  }
  return {};
}

/// Checks sampler equality and idempotence of every pass on one graph.
/// Returns an empty string on success, otherwise a description.
inline std::string check_passes(Graph& g, NodeId root) {
  const SampledWaveform before = sample(g, root, kSampleRate);
  for (const auto& p : kPasses) {
    const NodeId once = p.pass(g, root);
    std::string why = compare_samples(before, sample(g, once, kSampleRate), p.tolerance);
    if (!why.empty()) return std::string(p.name) + ": " + why;
    const NodeId twice = p.pass(g, once);
    if (!structurally_equal(g, once, twice)) {
      return std::string(p.name) + ": not idempotent";
    }
  }
  return {};
}

}  // namespace pulsegraph::testgen
