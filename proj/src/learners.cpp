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

#include "adasample/learners.hpp"

#include <algorithm>

#include "adasample/error.hpp"

namespace adasample {

std::string to_string(Family family) {
  switch (family) {
    case Family::DT: return "dt";
    case Family::LPM: return "lpm";
    case Family::GBM: return "gbm";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "dt") return Family::DT;
  if (lower == "lpm") return Family::LPM;
  if (lower == "gbm") return Family::GBM;
  throw Error("unknown model family '" + name + "' (expected dt, lpm or gbm)");
}

SizedModel::SizedModel(Family family, int requested_size, int class_count, Body body)
    : family_(family), requested_size_(requested_size), class_count_(class_count), body_(std::move(body)) {}

int SizedModel::realized_size() const {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DensityTree>) {
          return m.max_depth();
        } else if constexpr (std::is_same_v<T, LinearModel>) {
          std::size_t terms = 0;
          for (const auto& c : m.classes) terms = std::max(terms, c.terms.size());
          return static_cast<int>(terms);
        } else {
          return static_cast<int>(m.rounds.size());
        }
      },
      body_);
}

namespace {

int argmax(const std::vector<double>& scores) {
  return static_cast<int>(std::max_element(scores.begin(), scores.end()) - scores.begin());
}

}  // namespace

int SizedModel::predict(std::span<const double> x) const {
  return std::visit(
      [&](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DensityTree>) return m.predict(x);
        else return argmax(m.scores(x));
      },
      body_);
}

std::vector<int> SizedModel::predict(const Eigen::MatrixXd& features) const {
  std::vector<int> out(static_cast<std::size_t>(features.rows()));
  std::vector<double> row(static_cast<std::size_t>(features.cols()));
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    for (Eigen::Index j = 0; j < features.cols(); ++j) row[static_cast<std::size_t>(j)] = features(i, j);
    out[static_cast<std::size_t>(i)] = predict(row);
  }
  return out;
}

nlohmann::json SizedModel::summary() const {
  nlohmann::json j{{"family", to_string(family_)},
                   {"requested_size", requested_size_},
                   {"realized_size", realized_size()},
                   {"class_count", class_count_}};
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DensityTree>) {
          j["leaves"] = m.leaf_count();
          j["nodes"] = m.nodes().size();
        } else if constexpr (std::is_same_v<T, LinearModel>) {
          nlohmann::json terms = nlohmann::json::array();
          for (const auto& c : m.classes) terms.push_back(c.terms);
          j["terms"] = std::move(terms);
        } else {
          j["rounds"] = m.rounds.size();
          j["trees"] = m.rounds.size() * m.initial_scores.size();
          j["max_depth"] = m.max_depth;
          j["learning_rate"] = m.learning_rate;
        }
      },
      body_);
  return j;
}

SizedModel train_dt(const Dataset& data, int max_depth) {
  if (max_depth < 1) throw Error("decision tree size must be at least 1");
  CartOptions options;
  options.max_depth = max_depth;
  options.keep_members = false;
  return SizedModel(Family::DT, max_depth, data.class_count, fit_cart(data, options));
}

SizedModel train(const LearnerSpec& spec, const Dataset& data) {
  switch (spec.family) {
    case Family::DT: return train_dt(data, spec.size);
    case Family::LPM: return train_lpm(data, spec.size);
    case Family::GBM: return train_gbm(data, spec.size, spec.gbm_max_depth, spec.gbm_learning_rate);
  }
  throw Error("unknown model family");
}

}  // namespace adasample
