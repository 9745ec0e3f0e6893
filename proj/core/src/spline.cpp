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

#include "pulsegraph/spline.hpp"

#include <algorithm>
#include <cmath>

namespace pulsegraph {

NaturalCubicSpline::NaturalCubicSpline(std::span<const double> knots)
    : y_(knots.begin(), knots.end()), m_(knots.size(), 0.0) {
  const std::size_t n = y_.size();
  if (n >= 3) {
    // Thomas algorithm on M[i-1] + 4 M[i] + M[i+1] = 6 (y[i+1] - 2 y[i] + y[i-1])
    // for interior i, with M[0] = M[n-1] = 0.
    const std::size_t k = n - 2;
    std::vector<double> c(k, 0.0);
    std::vector<double> d(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      const double rhs = 6.0 * (y_[i + 2] - 2.0 * y_[i + 1] + y_[i]);
      const double denom = 4.0 - (i > 0 ? c[i - 1] : 0.0);
      c[i] = 1.0 / denom;
      d[i] = (rhs - (i > 0 ? d[i - 1] : 0.0)) / denom;
    }
    m_[k] = d[k - 1];
    for (std::size_t i = k - 1; i-- > 0;) {
      m_[i + 1] = d[i] - c[i] * m_[i + 2];
    }
  }
  cumulative_.assign(n == 0 ? 1 : n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    cumulative_[i + 1] = cumulative_[i] + 0.5 * (y_[i] + y_[i + 1]) -
                         (m_[i] + m_[i + 1]) / 24.0;
  }
}

double NaturalCubicSpline::operator()(double x) const {
  const std::size_t n = y_.size();
  if (n == 0) return 0.0;
  if (n == 1) return y_[0];
  x = std::clamp(x, 0.0, static_cast<double>(n - 1));
  std::size_t i = std::min(static_cast<std::size_t>(x), n - 2);
  const double u = x - static_cast<double>(i);
  const double v = 1.0 - u;
  return v * y_[i] + u * y_[i + 1] +
         ((v * v * v - v) * m_[i] + (u * u * u - u) * m_[i + 1]) / 6.0;
}

double NaturalCubicSpline::integral(double x) const {
  const std::size_t n = y_.size();
  if (n == 0) return 0.0;
  if (n == 1) return y_[0] * std::max(0.0, x);
  x = std::clamp(x, 0.0, static_cast<double>(n - 1));
  std::size_t i = std::min(static_cast<std::size_t>(x), n - 2);
  const double u = x - static_cast<double>(i);
  const double v = 1.0 - u;
  const double lin = (u - 0.5 * u * u) * y_[i] + 0.5 * u * u * y_[i + 1];
  const double curv_left = -0.25 * v * v * v * v + 0.5 * v * v - 0.25;
  const double curv_right = 0.25 * u * u * u * u - 0.5 * u * u;
  return cumulative_[i] + lin + (curv_left * m_[i] + curv_right * m_[i + 1]) / 6.0;
}

double spline_over_duration(std::span<const double> knots, double duration,
                            double t) {
  if (knots.size() < 2 || duration <= 0.0) {
    return knots.empty() ? 0.0 : knots.front();
  }
  NaturalCubicSpline s(knots);
  return s(t / duration * static_cast<double>(knots.size() - 1));
}

std::size_t discrete_index(std::size_t steps, double duration, double t) {
  if (steps <= 1 || duration <= 0.0) return 0;
  const double pos = std::floor(t / duration * static_cast<double>(steps));
  if (pos <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(pos), steps - 1);
}

double spline_integral_over_duration(std::span<const double> knots,
                                     double duration, double t) {
  if (knots.size() < 2 || duration <= 0.0) {
    return (knots.empty() ? 0.0 : knots.front()) * t;
  }
  const double h = duration / static_cast<double>(knots.size() - 1);
  return h * NaturalCubicSpline(knots).integral(t / h);
}

double discrete_integral(std::span<const double> steps, double duration,
                         double t) {
  const std::size_t m = steps.size();
  const double width = duration / static_cast<double>(m);
  const std::size_t idx = discrete_index(m, duration, t);
  double acc = 0.0;
  for (std::size_t i = 0; i < idx; ++i) acc += steps[i] * width;
  return acc + steps[idx] * (t - width * static_cast<double>(idx));
}

}  // namespace pulsegraph
