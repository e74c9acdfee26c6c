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

#ifndef ADASAMPLE_NAIVE_HPP_
#define ADASAMPLE_NAIVE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "adasample/data.hpp"
#include "adasample/learners.hpp"
#include "adasample/optimizer.hpp"
#include "json.hpp"

namespace adasample {

class Rng;

inline constexpr std::size_t kDefaultNaiveMaxDim = 4;

// Concentration plus one {a, b, a', b'} prior quadruple per input dimension.
struct FullIbmmParams {
  double alpha = 1.0;
  std::vector<std::array<double, 4>> priors;
  double shape_scale = 1.0;

  std::size_t dim() const { return priors.size(); }
  std::vector<double> to_values() const;
  static FullIbmmParams from_values(std::span<const double> values, double shape_scale = 1.0);
  void validate() const;
};

// Per-dimension Beta shapes of one mixture component.
struct ComponentShapes {
  std::vector<double> a;
  std::vector<double> b;
};

// log prod_j Beta(x_j; a_j, b_j) for every row, with coordinates clamped to
// [1e-9, 1 - 1e-9].
std::vector<double> beta_product_log_density(const Eigen::MatrixXd& features, std::span<const double> a,
                                             std::span<const double> b);

// Draws n rows of `data` with replacement from a full-dimensional infinite
// Beta mixture. Rows are always copies of training rows.
Dataset ibmm_weights(const Dataset& data, const FullIbmmParams& params, std::size_t n, Rng& rng,
                     std::vector<ComponentShapes>* components = nullptr,
                     std::vector<std::size_t>* sources = nullptr);

// 4d + 1 variables: alpha, then a_j, b_j, a'_j, b'_j per dimension.
SearchSpace full_ibmm_search_space(std::size_t dim);

struct NaiveConfig {
  std::size_t budget = 300;
  std::size_t repeats = 3;
  std::size_t max_dim = kDefaultNaiveMaxDim;
  std::size_t sample_size = 0;  // 0 means |train|
  double shape_scale = 1.0;
  Strategy strategy = Strategy::TPE;
  TpeConfig tpe;
};

struct NaiveResult {
  std::vector<Trial> trials;
  std::size_t best_trial = 0;
  FullIbmmParams best;
  double best_validation = 0.0;
  double test_f1 = 0.0;
  double baseline_test_f1 = 0.0;
};

// Trial 1 is pinned to a uniform resample of the training split.
NaiveResult naive_search(const LearnerSpec& learner, const Splits& splits, const NaiveConfig& config,
                         std::uint64_t seed);

std::string trial_log(const NaiveResult& result);

}  // namespace adasample

#endif  // ADASAMPLE_NAIVE_HPP_
