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

#ifndef ADASAMPLE_LEARNERS_HPP_
#define ADASAMPLE_LEARNERS_HPP_

#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "adasample/data.hpp"
#include "adasample/trees.hpp"
#include "json.hpp"

namespace adasample {

// Size-constrained model families: tree depth, number of linear terms,
// number of boosting rounds.
enum class Family { DT, LPM, GBM };

std::string to_string(Family family);
Family parse_family(const std::string& name);

struct LearnerSpec {
  Family family = Family::DT;
  int size = 1;
  // GBM only.
  int gbm_max_depth = 2;
  double gbm_learning_rate = 0.1;
};

// One-vs-rest linear probability model.
struct LinearModel {
  struct ClassScore {
    double intercept = 0.0;
    std::vector<int> terms;
    std::vector<double> weights;
  };
  std::vector<ClassScore> classes;

  std::vector<double> scores(std::span<const double> x) const;
};

// Least-squares regression tree used as the GBM base learner.
struct RegressionTree {
  struct Node {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int depth = 0;
    double value = 0.0;
  };
  std::vector<Node> nodes;

  double predict(std::span<const double> x) const;
  int depth() const;
};

struct BoostedModel {
  std::vector<double> initial_scores;
  double learning_rate = 0.1;
  int max_depth = 2;
  // rounds[m][c]: tree for class c in round m.
  std::vector<std::vector<RegressionTree>> rounds;

  std::vector<double> scores(std::span<const double> x) const;
};

class SizedModel {
 public:
  using Body = std::variant<DensityTree, LinearModel, BoostedModel>;

  SizedModel(Family family, int requested_size, int class_count, Body body);

  Family family() const { return family_; }
  int requested_size() const { return requested_size_; }
  // Depth reached, largest per-class term count, or boosting rounds.
  int realized_size() const;
  int class_count() const { return class_count_; }
  const Body& body() const { return body_; }

  int predict(std::span<const double> x) const;
  std::vector<int> predict(const Eigen::MatrixXd& features) const;

  nlohmann::json summary() const;

 private:
  Family family_;
  int requested_size_;
  int class_count_;
  Body body_;
};

// CART with max_depth = size; prediction is the reached leaf's majority.
SizedModel train_dt(const Dataset& data, int max_depth);
// Forward stepwise selection per class: add the inactive feature most
// correlated with the residual, refit least squares on the active set, until
// `terms` features are active.
SizedModel train_lpm(const Dataset& data, int terms);
// Softmax gradient boosting; one regression tree per class per round with
// Newton leaf values.
SizedModel train_gbm(const Dataset& data, int rounds, int base_max_depth, double learning_rate = 0.1);
SizedModel train(const LearnerSpec& spec, const Dataset& data);

// Sum over instances of log softmax probability of the true class.
double log_likelihood(const BoostedModel& model, const Dataset& data);

// Macro-averaged F1 over the classes present in either labels or predictions.
double macro_f1(std::span<const int> truth, std::span<const int> predicted, int class_count);
double macro_f1(const SizedModel& model, const Dataset& data);

// Percentage relative improvement 100 * (new - baseline) / baseline.
double delta_f1(double f1_new, double f1_baseline);
// delta_f1 floored at zero, as reported.
double floored_delta_f1(double f1_new, double f1_baseline);

}  // namespace adasample

#endif  // ADASAMPLE_LEARNERS_HPP_
