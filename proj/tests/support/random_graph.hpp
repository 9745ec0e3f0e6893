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
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pulsegraph/graph.hpp"
#include "pulsegraph/transform.hpp"

namespace pulsegraph::testgen {

// Durations are whole multiples of kUnit and every literal is a small dyadic
// rational, so sampling at kSampleRate lands exactly on segment boundaries
// and reassociating sums or products of literals is exact.
inline constexpr double kUnit = 0x1p-24;
inline constexpr double kSampleRate = 0x1p26;

struct Options {
  int max_depth = 3;
  int max_units = 8;
  bool zero_durations = true;
  bool variables = true;
  bool cosine = true;
  bool clock = true;
  bool foreign = true;  // Gauss and Poly leaves
  bool bounded_scalars = false;  // keep every scalar expression within [-1, 1]
};

class GraphGen {
 public:
  GraphGen(Graph& graph, std::uint64_t seed, Options options = {})
      : g_(graph), rng_(seed), opt_(options) {}

  /// Random waveform whose duration is exactly units * kUnit.
  NodeId waveform(int units) { return waveform(units, opt_.max_depth); }

  /// Random waveform with a random positive duration.
  NodeId any() { return waveform(uniform(1, opt_.max_units)); }

  const Bindings& bindings() const { return bindings_; }

  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  double dyadic(int lo = -8, int hi = 8) { return uniform(lo, hi) / 8.0; }

 private:
  NodeId waveform(int units, int depth) {
    const int pick = depth <= 0 ? uniform(0, 4) : uniform(0, 8);
    switch (pick) {
      case 0:
        return g_.zero(duration(units));
      case 1:
        return g_.constant(scalar(2), duration(units));
      case 2:
      case 3:
        return sine(units);
      case 4:
        if (opt_.foreign) return foreign(units);
        return sine(units);
      case 5:
        if (units >= 1) return sequence(units, depth);
        return g_.zero(duration(units));
      case 6:
        return combine(units, depth, true);
      case 7:
        return combine(units, depth, false);
      default:
        return g_.product({scalar(1), waveform(units, depth - 1)});
    }
  }

  NodeId sine(int units) {
    NodeId frequency = units >= 2 && coin(0.3)
                           ? steps(units, [&] { return frequency_value(); })
                           : g_.num(frequency_value());
    NodeId phase = scalar(1);
    std::optional<NodeId> clock;
    if (opt_.clock && coin(0.25)) clock = g_.clock("c");
    if (opt_.cosine && coin(0.3)) {
      return g_.cosine(frequency, phase, duration(units), clock);
    }
    return g_.sine(frequency, phase, duration(units), clock);
  }

  NodeId foreign(int units) {
    if (coin()) {
      const double scale = units > 0 ? 1.0 / (units * kUnit) : 1.0;
      return g_.poly({dyadic(), dyadic() * scale, dyadic() * scale * scale},
                     duration(units));
    }
    return g_.gauss(dyadic(1, 8), units * kUnit / 2.0, 2.0 * kUnit,
                    duration(units));
  }

  NodeId sequence(int units, int depth) {
    const int max_parts = opt_.zero_durations ? 3 : std::min(3, units);
    const int parts = uniform(1, max_parts);
    const int min_part = opt_.zero_durations ? 0 : 1;
    std::vector<NodeId> children;
    int left = units;
    for (int i = 0; i < parts; ++i) {
      const int reserve = min_part * (parts - i - 1);
      const int u = i + 1 == parts ? left : uniform(min_part, left - reserve);
      left -= u;
      children.push_back(waveform(u, depth - 1));
    }
    return g_.sequence(std::move(children));
  }

  NodeId combine(int units, int depth, bool sum) {
    std::vector<Arg> ops;
    const int n = uniform(2, 3);
    for (int i = 0; i < n; ++i) ops.push_back(waveform(units, depth - 1));
    if (coin(0.5)) ops.insert(ops.begin() + uniform(0, n), scalar(1));
    if (coin(0.3)) ops.insert(ops.begin() + uniform(0, n), g_.num(sum ? 0.0 : 1.0));
    return sum ? g_.sum(std::move(ops)) : g_.product(std::move(ops));
  }

  template <class Value>
  NodeId steps(int units, Value value) {
    const int n = uniform(2, std::min(4, units));
    std::vector<NodeId> children;
    int left = units;
    for (int i = 0; i < n; ++i) {
      const int u = i + 1 == n ? left : uniform(1, left - (n - i - 1));
      left -= u;
      children.push_back(g_.constant(value(), duration(u)));
    }
    return g_.sequence(std::move(children));
  }

  double frequency_value() { return uniform(0, 15) * 0x1p18; }

  // Dyadic scalar expression: literals, bound variables, sums, products.
  NodeId scalar(int depth) {
    const int pick = depth <= 0 ? uniform(0, 1) : uniform(0, 3);
    switch (pick) {
      case 0:
        return g_.num(dyadic());
      case 1:
        if (opt_.variables) return variable("v" + std::to_string(uniform(0, 3)));
        return g_.num(dyadic());
      case 2:
        if (opt_.bounded_scalars) {
          return g_.sum({g_.product({0.25, scalar(depth - 1)}),
                         g_.product({0.25, scalar(depth - 1)}), g_.num(dyadic(-4, 4))});
        }
        return g_.sum({scalar(depth - 1), scalar(depth - 1), g_.num(dyadic())});
      default:
        return g_.product({g_.num(dyadic()), scalar(depth - 1)});
    }
  }

  NodeId variable(const std::string& name) {
    NodeId v = g_.var(name);
    auto it = bindings_.find(name);
    if (it == bindings_.end()) it = bindings_.emplace(name, dyadic()).first;
    g_.bind(v, it->second);
    return v;
  }

  NodeId duration(int units) {
    const double d = units * kUnit;
    switch (uniform(0, 5)) {
      case 0:
        if (units >= 1) {
          const int a = uniform(0, units);
          return g_.sum({(units - a) * kUnit, a * kUnit});
        }
        return g_.num(d);
      case 1:
        if (opt_.variables) {
          const std::string name = "t" + std::to_string(next_duration_var_++);
          NodeId v = g_.var(name);
          bindings_[name] = d;
          g_.bind(v, d);
          return v;
        }
        return g_.num(d);
      default:
        return g_.num(d);
    }
  }

  Graph& g_;
  std::mt19937_64 rng_;
  Options opt_;
  Bindings bindings_;
  int next_duration_var_ = 0;
};

}  // namespace pulsegraph::testgen
