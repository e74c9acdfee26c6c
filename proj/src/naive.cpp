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

#include "adasample/naive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "adasample/depthdist.hpp"
#include "adasample/error.hpp"
#include "adasample/random.hpp"

namespace adasample {

std::vector<double> FullIbmmParams::to_values() const {
  std::vector<double> v{alpha};
  for (const auto& q : priors) v.insert(v.end(), q.begin(), q.end());
  return v;
}

FullIbmmParams FullIbmmParams::from_values(std::span<const double> values, double shape_scale) {
  if (values.size() < 5 || (values.size() - 1) % 4 != 0) throw Error("full IBMM parameters need 4d + 1 values");
  FullIbmmParams p;
  p.alpha = values[0];
  p.shape_scale = shape_scale;
  for (std::size_t i = 1; i < values.size(); i += 4)
    p.priors.push_back({values[i], values[i + 1], values[i + 2], values[i + 3]});
  return p;
}

void FullIbmmParams::validate() const {
  if (!(alpha > 0.0)) throw Error("concentration must be positive");
  if (!(shape_scale > 0.0)) throw Error("shape scale must be positive");
  if (priors.empty()) throw Error("full IBMM parameters need at least one dimension");
  for (const auto& q : priors)
    for (double v : q)
      if (!(v > 0.0)) throw Error("Beta prior shapes must be positive");
}

std::vector<double> beta_product_log_density(const Eigen::MatrixXd& features, std::span<const double> a,
                                             std::span<const double> b) {
  const auto d = static_cast<std::size_t>(features.cols());
  if (a.size() != d || b.size() != d) throw Error("shape vectors must match the feature dimension");
  constexpr double kEdge = 1e-9;
  std::vector<double> norm(d);
  for (std::size_t j = 0; j < d; ++j) norm[j] = std::lgamma(a[j] + b[j]) - std::lgamma(a[j]) - std::lgamma(b[j]);
  std::vector<double> out(static_cast<std::size_t>(features.rows()), 0.0);
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double x = std::clamp(features(i, static_cast<Eigen::Index>(j)), kEdge, 1.0 - kEdge);
      s += norm[j] + (a[j] - 1.0) * std::log(x) + (b[j] - 1.0) * std::log1p(-x);
    }
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

Dataset ibmm_weights(const Dataset& data, const FullIbmmParams& params, std::size_t n, Rng& rng,
                     std::vector<ComponentShapes>* components, std::vector<std::size_t>* sources) {
  params.validate();
  if (data.empty()) throw Error("cannot sample from an empty dataset");
  if (params.dim() != data.dim()) throw Error("full IBMM dimension does not match the data");
  if (components) components->clear();
  if (sources) sources->clear();

  const Partition partition = partition_counts(n, params.alpha, rng);
  std::vector<std::size_t> picks;
  picks.reserve(n);
  std::vector<double> cdf(data.size());
  for (std::size_t count : partition.counts) {
    ComponentShapes shapes;
    for (const auto& q : params.priors) {
      shapes.a.push_back(params.shape_scale * rng.beta(q[0], q[1]));
      shapes.b.push_back(params.shape_scale * rng.beta(q[2], q[3]));
    }
    const auto logw = beta_product_log_density(data.features, shapes.a, shapes.b);
    const double top = *std::max_element(logw.begin(), logw.end());
    double acc = 0.0;
    for (std::size_t i = 0; i < logw.size(); ++i) {
      acc += std::isfinite(top) ? std::exp(logw[i] - top) : 1.0;
      cdf[i] = acc;
    }
    for (std::size_t j = 0; j < count; ++j) picks.push_back(rng.from_cdf(cdf));
    if (components) components->push_back(std::move(shapes));
  }
  if (sources) *sources = picks;
  return subset(data, picks);
}

SearchSpace full_ibmm_search_space(std::size_t dim) {
  if (dim < 1) throw Error("full IBMM search space needs at least one dimension");
  SearchSpace space;
  space.variables.push_back({"alpha", kAlphaMin, kAlphaMax, Scale::Linear, false});
  for (std::size_t j = 1; j <= dim; ++j)
    for (const char* name : {"a_", "b_", "a_prime_", "b_prime_"})
      space.variables.push_back({name + std::to_string(j), kShapePriorMin, kShapePriorMax, Scale::Linear, false});
  return space;
}

NaiveResult naive_search(const LearnerSpec& learner, const Splits& splits, const NaiveConfig& config,
                         std::uint64_t seed) {
  const std::size_t d = splits.train.dim();
  if (d > config.max_dim)
    throw Error("naive sampling supports at most " + std::to_string(config.max_dim) + " dimensions (data has " +
                std::to_string(d) + "); use the density-tree search instead");
  if (config.budget < 1) throw Error("search budget must be at least 1");
  if (config.repeats < 1) throw Error("repeats must be at least 1");
  if (splits.train.empty() || splits.validation.empty()) throw Error("search needs nonempty train and validation splits");
  const std::size_t n = config.sample_size > 0 ? config.sample_size : splits.train.size();
  const SearchSpace space = full_ibmm_search_space(d);

  auto draw = [&](const Trial& trial, Rng& rng) {
    if (trial.pinned) {
      std::vector<std::size_t> picks(n);
      for (auto& p : picks) p = rng.index(splits.train.size());
      return subset(splits.train, picks);
    }
    return ibmm_weights(splits.train, FullIbmmParams::from_values(trial.values, config.shape_scale), n, rng);
  };

  NaiveResult result;
  Rng optimizer_rng(derive_seed(seed, 0));
  for (std::size_t t = 1; t <= config.budget; ++t) {
    Trial trial;
    trial.index = t;
    trial.values = suggest(space, result.trials, config.strategy, config.tpe, optimizer_rng);
    trial.pinned = t == 1;
    trial.seed = derive_seed(seed, t);
    for (std::size_t r = 0; r < config.repeats; ++r) {
      Rng rng(derive_seed(seed, t, r));
      trial.repeat_scores.push_back(macro_f1(train(learner, draw(trial, rng)), splits.validation));
    }
    trial.score = std::accumulate(trial.repeat_scores.begin(), trial.repeat_scores.end(), 0.0) /
                  static_cast<double>(config.repeats);
    result.trials.push_back(std::move(trial));
  }
  for (std::size_t i = 1; i < result.trials.size(); ++i)
    if (result.trials[i].score > result.trials[result.best_trial].score) result.best_trial = i;
  const Trial& best = result.trials[result.best_trial];
  result.best = FullIbmmParams::from_values(best.values, config.shape_scale);
  result.best_validation = best.score;

  double test_sum = 0.0;
  double baseline_sum = 0.0;
  for (std::size_t r = 0; r < config.repeats; ++r) {
    const std::uint64_t test_seed = derive_seed(seed, 0, r + 1);
    Rng rng(test_seed);
    test_sum += macro_f1(train(learner, draw(best, rng)), splits.test);
    Rng baseline_rng(test_seed);
    baseline_sum += macro_f1(train(learner, draw(result.trials.front(), baseline_rng)), splits.test);
  }
  result.test_f1 = test_sum / static_cast<double>(config.repeats);
  result.baseline_test_f1 = baseline_sum / static_cast<double>(config.repeats);
  return result;
}

std::string trial_log(const NaiveResult& result) {
  if (result.trials.empty()) return {};
  std::vector<std::string> names;
  for (const auto& v : full_ibmm_search_space((result.trials.front().values.size() - 1) / 4).variables)
    names.push_back(v.name);
  std::ostringstream out;
  for (const auto& trial : result.trials) out << trial_to_json(trial, names).dump() << '\n';
  return out.str();
}

}  // namespace adasample
