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

#include "adasample/depthdist.hpp"

#include <algorithm>
#include <numeric>

#include "adasample/error.hpp"
#include "adasample/random.hpp"

namespace adasample {

bool DepthDistParams::in_search_box() const {
  auto within = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
  return within(alpha, kAlphaMin, kAlphaMax) && within(a, kShapePriorMin, kShapePriorMax) &&
         within(b, kShapePriorMin, kShapePriorMax) && within(a_prime, kShapePriorMin, kShapePriorMax) &&
         within(b_prime, kShapePriorMin, kShapePriorMax);
}

std::size_t Partition::total() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

std::vector<std::size_t> crp_assignments(std::size_t n, double alpha, Rng& rng) {
  if (!(alpha > 0.0)) throw Error("DP concentration must be positive");
  std::vector<std::size_t> assignment(n);
  std::size_t components = 0;
  for (std::size_t i = 0; i < n; ++i) {
    // Joining the component of a uniformly chosen earlier point realizes
    // the n_c / (i + alpha) weights.
    const double v = rng.uniform() * (static_cast<double>(i) + alpha);
    if (v < alpha || i == 0) {
      assignment[i] = components++;
    } else {
      const auto j = std::min(static_cast<std::size_t>(v - alpha), i - 1);
      assignment[i] = assignment[j];
    }
  }
  return assignment;
}

Partition partition_counts(std::size_t n, double alpha, Rng& rng) {
  Partition partition;
  for (std::size_t c : crp_assignments(n, alpha, rng)) {
    if (c >= partition.counts.size()) partition.counts.resize(c + 1, 0);
    ++partition.counts[c];
  }
  return partition;
}

std::vector<double> sample_depth_values(std::size_t n, const DepthDistParams& params, Rng& rng) {
  if (!(params.a > 0.0 && params.b > 0.0 && params.a_prime > 0.0 && params.b_prime > 0.0))
    throw Error("Beta prior shapes must be positive");
  if (!(params.shape_scale > 0.0)) throw Error("shape scale must be positive");
  const auto assignment = crp_assignments(n, params.alpha, rng);
  std::vector<double> shape_a;
  std::vector<double> shape_b;
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = assignment[i];
    if (c == shape_a.size()) {
      shape_a.push_back(params.shape_scale * rng.beta(params.a, params.b));
      shape_b.push_back(params.shape_scale * rng.beta(params.a_prime, params.b_prime));
    }
    values[i] = rng.beta(shape_a[c], shape_b[c]);
  }
  return values;
}

double harmonic_number(std::size_t n) {
  double h = 0.0;
  // Summing small terms first limits rounding error.
  for (std::size_t i = n; i >= 1; --i) h += 1.0 / static_cast<double>(i);
  return h;
}

double expected_component_count(double alpha, std::size_t n) {
  double e = 0.0;
  for (std::size_t i = 1; i <= n; ++i) e += alpha / (alpha + static_cast<double>(i) - 1.0);
  return e;
}

double alpha_upper_bound(double k_max, std::size_t n) {
  if (!(k_max >= 1.0) || n < 1) throw Error("alpha_upper_bound needs k_max >= 1 and n >= 1");
  return k_max / harmonic_number(n);
}

}  // namespace adasample
