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
#include <numeric>

#include "adasample/error.hpp"
#include "adasample/learners.hpp"

namespace adasample {

namespace {

constexpr double kHessianFloor = 1e-6;

struct RegressionBuilder {
  const Eigen::MatrixXd& x;
  const std::vector<double>& gradient;
  const std::vector<double>& hessian;
  int max_depth;
  RegressionTree tree;

  void grow(int id, std::vector<std::uint32_t> members) {
    double g_sum = 0.0;
    double h_sum = 0.0;
    for (std::uint32_t i : members) {
      g_sum += gradient[i];
      h_sum += hessian[i];
    }
    tree.nodes[static_cast<std::size_t>(id)].value = g_sum / std::max(h_sum, kHessianFloor);
    const int depth = tree.nodes[static_cast<std::size_t>(id)].depth;
    if (depth >= max_depth || members.size() < 2) return;

    const double n = static_cast<double>(members.size());
    const double parent = g_sum * g_sum / n;
    double best_gain = 1e-12;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<std::uint32_t> sorted = members;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const auto col = x.col(j);
      std::sort(sorted.begin(), sorted.end(), [&](std::uint32_t a, std::uint32_t b) {
        return col(a) < col(b) || (col(a) == col(b) && a < b);
      });
      double left = 0.0;
      for (std::size_t p = 1; p < sorted.size(); ++p) {
        left += gradient[sorted[p - 1]];
        const double a = col(sorted[p - 1]);
        const double b = col(sorted[p]);
        if (!(a < b)) continue;
        const double nl = static_cast<double>(p);
        const double right = g_sum - left;
        const double gain = left * left / nl + right * right / (n - nl) - parent;
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = static_cast<int>(j);
          double t = a + (b - a) / 2.0;
          if (!(t < b)) t = a;
          best_threshold = t;
        }
      }
    }
    if (best_feature < 0) return;

    std::vector<std::uint32_t> left_members, right_members;
    for (std::uint32_t i : members)
      (x(i, best_feature) <= best_threshold ? left_members : right_members).push_back(i);
    const int left_id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({-1, 0.0, -1, -1, depth + 1, 0.0});
    tree.nodes.push_back({-1, 0.0, -1, -1, depth + 1, 0.0});
    auto& node = tree.nodes[static_cast<std::size_t>(id)];
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = left_id;
    node.right = left_id + 1;
    grow(left_id, std::move(left_members));
    grow(left_id + 1, std::move(right_members));
  }
};

void softmax_in_place(std::vector<double>& s) {
  const double top = *std::max_element(s.begin(), s.end());
  double total = 0.0;
  for (double& v : s) {
    v = std::exp(v - top);
    total += v;
  }
  for (double& v : s) v /= total;
}

}  // namespace

double RegressionTree::predict(std::span<const double> x) const {
  int id = 0;
  while (nodes[static_cast<std::size_t>(id)].feature >= 0) {
    const Node& n = nodes[static_cast<std::size_t>(id)];
    id = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return nodes[static_cast<std::size_t>(id)].value;
}

int RegressionTree::depth() const {
  int d = 0;
  for (const auto& n : nodes) d = std::max(d, n.depth);
  return d;
}

std::vector<double> BoostedModel::scores(std::span<const double> x) const {
  std::vector<double> s = initial_scores;
  for (const auto& round : rounds)
    for (std::size_t c = 0; c < round.size(); ++c) s[c] += learning_rate * round[c].predict(x);
  return s;
}

SizedModel train_gbm(const Dataset& data, int rounds, int base_max_depth, double learning_rate) {
  if (data.empty()) throw Error("cannot train on an empty dataset");
  if (rounds < 1) throw Error("boosting rounds must be at least 1");
  if (base_max_depth < 1) throw Error("base tree depth must be at least 1");
  if (!(learning_rate >= 0.0)) throw Error("learning rate must be non-negative");

  const std::size_t n = data.size();
  const auto k = static_cast<std::size_t>(data.class_count);
  BoostedModel model;
  model.learning_rate = learning_rate;
  model.max_depth = base_max_depth;
  const auto counts = data.class_counts();
  for (std::size_t c = 0; c < k; ++c)
    model.initial_scores.push_back(
        std::log((static_cast<double>(counts[c]) + 1.0) / (static_cast<double>(n) + static_cast<double>(k))));

  std::vector<std::vector<double>> scores(n, model.initial_scores);
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0u);
  std::vector<double> gradient(n), hessian(n);
  std::vector<std::vector<double>> prob(n);
  std::vector<double> row(data.dim());

  for (int m = 0; m < rounds; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      prob[i] = scores[i];
      softmax_in_place(prob[i]);
    }
    std::vector<RegressionTree> round;
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        const double p = prob[i][c];
        gradient[i] = (data.labels[i] == static_cast<int>(c) ? 1.0 : 0.0) - p;
        hessian[i] = p * (1.0 - p);
      }
      RegressionBuilder builder{data.features, gradient, hessian, base_max_depth, {}};
      builder.tree.nodes.push_back({-1, 0.0, -1, -1, 0, 0.0});
      builder.grow(0, all);
      round.push_back(std::move(builder.tree));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < data.features.cols(); ++j)
        row[static_cast<std::size_t>(j)] = data.features(static_cast<Eigen::Index>(i), j);
      for (std::size_t c = 0; c < k; ++c) scores[i][c] += learning_rate * round[c].predict(row);
    }
    model.rounds.push_back(std::move(round));
  }
  return SizedModel(Family::GBM, rounds, data.class_count, std::move(model));
}

double log_likelihood(const BoostedModel& model, const Dataset& data) {
  double total = 0.0;
  std::vector<double> row(data.dim());
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (Eigen::Index j = 0; j < data.features.cols(); ++j)
      row[static_cast<std::size_t>(j)] = data.features(static_cast<Eigen::Index>(i), j);
    auto s = model.scores(row);
    const double top = *std::max_element(s.begin(), s.end());
    double z = 0.0;
    for (double v : s) z += std::exp(v - top);
    total += s[static_cast<std::size_t>(data.labels[i])] - top - std::log(z);
  }
  return total;
}

}  // namespace adasample
