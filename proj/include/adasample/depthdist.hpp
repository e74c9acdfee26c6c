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

#ifndef ADASAMPLE_DEPTHDIST_HPP_
#define ADASAMPLE_DEPTHDIST_HPP_

#include <cstddef>
#include <vector>

namespace adasample {

class Rng;

// Search-box limits for the depth distribution parameters.
inline constexpr double kAlphaMin = 0.1;
inline constexpr double kAlphaMax = 14.0;
inline constexpr double kShapePriorMin = 0.1;
inline constexpr double kShapePriorMax = 10.0;

// Infinite Beta mixture over normalized depth. Component i is
// Beta(A_i, B_i) with A_i ~ Beta(a, b) and B_i ~ Beta(a_prime, b_prime).
struct DepthDistParams {
  double alpha = 1.0;
  double a = 1.0;
  double b = 1.0;
  double a_prime = 1.0;
  double b_prime = 1.0;
  // Multiplies the drawn component shapes. 1 leaves them in (0, 1).
  double shape_scale = 1.0;

  bool in_search_box() const;
};

// counts[i] is the size of component i + 1, in order of first appearance.
struct Partition {
  std::vector<std::size_t> counts;

  std::size_t components() const { return counts.size(); }
  std::size_t total() const;
};

// Blackwell-MacQueen urn: point i (0-based) joins component c with
// probability n_c / (i + alpha) and opens a new one with alpha / (i + alpha).
// Returns the 0-based component of each point.
std::vector<std::size_t> crp_assignments(std::size_t n, double alpha, Rng& rng);
Partition partition_counts(std::size_t n, double alpha, Rng& rng);

// Draws n normalized depths. Values come out in urn order, which keeps them
// exchangeable.
std::vector<double> sample_depth_values(std::size_t n, const DepthDistParams& params, Rng& rng);

double harmonic_number(std::size_t n);
// E[#components] = sum_{i=1..n} alpha / (alpha + i - 1).
double expected_component_count(double alpha, std::size_t n);
// k_max / H_n: concentration at which the expected component count reaches
// k_max for n points.
double alpha_upper_bound(double k_max, std::size_t n);

}  // namespace adasample

#endif  // ADASAMPLE_DEPTHDIST_HPP_
