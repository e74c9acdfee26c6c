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

#include <algorithm>
#include <cmath>

#include "adasample/error.hpp"
#include "adasample/learners.hpp"

namespace adasample {

namespace {

constexpr double kRidgeJitter = 1e-8;

}  // namespace

std::vector<double> LinearModel::scores(std::span<const double> x) const {
  std::vector<double> out;
  out.reserve(classes.size());
  for (const auto& c : classes) {
    double s = c.intercept;
    for (std::size_t t = 0; t < c.terms.size(); ++t) s += c.weights[t] * x[static_cast<std::size_t>(c.terms[t])];
    out.push_back(s);
  }
  return out;
}

SizedModel train_lpm(const Dataset& data, int terms) {
  if (data.empty()) throw Error("cannot train on an empty dataset");
  const auto d = static_cast<Eigen::Index>(data.dim());
  if (terms < 1) throw Error("linear model size must be at least 1");
  if (terms > d)
    throw Error("linear model size " + std::to_string(terms) + " exceeds dimension " + std::to_string(d));

  const auto n = static_cast<Eigen::Index>(data.size());
  const Eigen::RowVectorXd means = data.features.colwise().mean();
  const Eigen::MatrixXd centred = data.features.rowwise() - means;
  const Eigen::VectorXd norms = centred.colwise().norm().transpose();

  LinearModel model;
  for (int c = 0; c < data.class_count; ++c) {
    Eigen::VectorXd target(n);
    for (Eigen::Index i = 0; i < n; ++i) target(i) = data.labels[static_cast<std::size_t>(i)] == c ? 1.0 : 0.0;
    const double target_mean = target.mean();
    const Eigen::VectorXd centred_target = target.array() - target_mean;

    std::vector<int> active;
    std::vector<bool> used(static_cast<std::size_t>(d), false);
    Eigen::VectorXd residual = centred_target;
    Eigen::VectorXd weights;
    for (int step = 0; step < terms; ++step) {
      const Eigen::VectorXd corr = centred.transpose() * residual;
      int pick = -1;
      double best = -1.0;
      for (Eigen::Index j = 0; j < d; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double score = norms(j) > 0.0 ? std::abs(corr(j)) / norms(j) : 0.0;
        if (score > best) {
          best = score;
          pick = static_cast<int>(j);
        }
      }
      used[static_cast<std::size_t>(pick)] = true;
      active.push_back(pick);

      const auto k = static_cast<Eigen::Index>(active.size());
      Eigen::MatrixXd xs(n, k);
      for (Eigen::Index t = 0; t < k; ++t) xs.col(t) = centred.col(active[static_cast<std::size_t>(t)]);
      Eigen::MatrixXd gram = xs.transpose() * xs;
      gram.diagonal().array() += kRidgeJitter;
      weights = gram.ldlt().solve(xs.transpose() * centred_target);
      residual = centred_target - xs * weights;
    }

    LinearModel::ClassScore score;
    score.terms = active;
    score.weights.assign(weights.data(), weights.data() + weights.size());
    score.intercept = target_mean;
    for (std::size_t t = 0; t < active.size(); ++t) score.intercept -= score.weights[t] * means(active[t]);
    model.classes.push_back(std::move(score));
  }
  return SizedModel(Family::LPM, terms, data.class_count, std::move(model));
}

}  // namespace adasample
