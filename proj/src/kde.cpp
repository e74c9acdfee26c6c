/*
 * Copyright 2026 The adasample Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "adasample/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "adasample/error.hpp"

namespace adasample {

namespace {

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  const std::size_t j = std::min(i + 1, sorted.size() - 1);
  return sorted[i] + (pos - static_cast<double>(i)) * (sorted[j] - sorted[i]);
}

}  // namespace

double silverman_bandwidth(std::span<const double> values) {
  if (values.size() < 2) throw Error("bandwidth selection needs at least two values");
  const auto n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  if (!(spread > 0.0)) spread = std::max(std::abs(mean), 1.0) * 1e-3;
  return 0.9 * spread * std::pow(n, -0.2);
}

GaussianKde::GaussianKde(std::vector<double> values) : GaussianKde(values, silverman_bandwidth(values)) {}

GaussianKde::GaussianKde(std::vector<double> values, double bandwidth)
    : values_(std::move(values)), bandwidth_(bandwidth) {
  if (values_.empty()) throw Error("density estimate needs at least one value");
  if (!(bandwidth_ > 0.0)) throw Error("bandwidth must be positive");
  std::sort(values_.begin(), values_.end());
}

double GaussianKde::operator()(double x) const {
  constexpr double kInvSqrt2Pi = 0.39894228040143267794;
  // Kernels farther than 9 bandwidths contribute below double precision.
  const double reach = 9.0 * bandwidth_;
  auto first = std::lower_bound(values_.begin(), values_.end(), x - reach);
  auto last = std::upper_bound(first, values_.end(), x + reach);
  double s = 0.0;
  for (auto it = first; it != last; ++it) {
    const double z = (x - *it) / bandwidth_;
    s += std::exp(-0.5 * z * z);
  }
  return s * kInvSqrt2Pi / (bandwidth_ * static_cast<double>(values_.size()));
}

std::vector<std::pair<double, double>> GaussianKde::evaluate_grid(double lo, double hi, std::size_t points) const {
  if (points < 2 || !(lo < hi)) throw Error("grid needs at least two points and lo < hi");
  std::vector<std::pair<double, double>> out;
  out.reserve(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double x = i + 1 == points ? hi : lo + step * static_cast<double>(i);
    out.emplace_back(x, (*this)(x));
  }
  return out;
}

double trapezoid(std::span<const std::pair<double, double>> curve) {
  double s = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i)
    s += 0.5 * (curve[i].first - curve[i - 1].first) * (curve[i].second + curve[i - 1].second);
  return s;
}

}  // namespace adasample
