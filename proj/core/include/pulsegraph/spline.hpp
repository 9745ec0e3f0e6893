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

#include <span>
#include <vector>

namespace pulsegraph {

/// Natural cubic spline through equally spaced knots at x = 0, 1, ..., n-1.
/// Two knots degenerate to linear interpolation; one knot is a constant.
class NaturalCubicSpline {
 public:
  explicit NaturalCubicSpline(std::span<const double> knots);

  /// Value at x, clamped to the knot range.
  double operator()(double x) const;

  /// Integral of the spline over [0, x], clamped to the knot range.
  double integral(double x) const;

  std::size_t size() const { return y_.size(); }

 private:
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
  std::vector<double> cumulative_;  // integral over [0, i]
};

/// Evaluates a spline whose knots span [0, duration] at equal spacing.
double spline_over_duration(std::span<const double> knots, double duration,
                            double t);

/// Integral over [0, t] of the same spline.
double spline_integral_over_duration(std::span<const double> knots,
                                     double duration, double t);

/// Index of the equal-width step active at time t in [0, duration).
std::size_t discrete_index(std::size_t steps, double duration, double t);

/// Integral over [0, t] of equal-width steps spanning [0, duration].
double discrete_integral(std::span<const double> steps, double duration,
                         double t);

}  // namespace pulsegraph
