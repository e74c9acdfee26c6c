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
#include <sstream>

#include "adasample/error.hpp"
#include "adasample/optimizer.hpp"
#include "adasample/random.hpp"

namespace adasample {

double adjust_po(double po, double low, double high) {
  if (!(low >= 0.0 && low < high && high <= 1.0)) throw Error("p_o thresholds need 0 <= low < high <= 1");
  if (po < low) return 0.0;
  if (po > high) return 1.0;
  return po;
}

std::vector<double> SamplerParams::to_values() const {
  return {depth.alpha, depth.a, depth.b, depth.a_prime, depth.b_prime, lambda, static_cast<double>(sample_size), po};
}

SamplerParams SamplerParams::from_values(std::span<const double> values, double shape_scale) {
  if (values.size() != 8) throw Error("sampler parameters need exactly 8 values");
  SamplerParams p;
  p.depth = {values[0], values[1], values[2], values[3], values[4], shape_scale};
  p.lambda = values[5];
  p.sample_size = static_cast<std::size_t>(std::llround(values[6]));
  p.po = values[7];
  return p;
}

nlohmann::json SamplerParams::to_json() const {
  return {{"alpha", depth.alpha}, {"a", depth.a},           {"b", depth.b},
          {"a_prime", depth.a_prime}, {"b_prime", depth.b_prime}, {"shape_scale", depth.shape_scale},
          {"lambda", lambda},     {"sample_size", sample_size}, {"po", po}};
}

SamplerParams SamplerParams::from_json(const nlohmann::json& j) {
  SamplerParams p;
  p.depth.alpha = j.at("alpha").get<double>();
  p.depth.a = j.at("a").get<double>();
  p.depth.b = j.at("b").get<double>();
  p.depth.a_prime = j.at("a_prime").get<double>();
  p.depth.b_prime = j.at("b_prime").get<double>();
  p.depth.shape_scale = j.value("shape_scale", 1.0);
  p.lambda = j.at("lambda").get<double>();
  p.sample_size = j.at("sample_size").get<std::size_t>();
  p.po = j.at("po").get<double>();
  return p;
}

SearchSpace sampler_search_space(std::size_t sample_size_min, std::size_t sample_size_max) {
  if (sample_size_min < 1 || sample_size_min >= sample_size_max) throw Error("sample size bounds need 1 <= min < max");
  SearchSpace space;
  space.variables = {
      {"alpha", kAlphaMin, kAlphaMax, Scale::Linear, false},
      {"a", kShapePriorMin, kShapePriorMax, Scale::Linear, false},
      {"b", kShapePriorMin, kShapePriorMax, Scale::Linear, false},
      {"a_prime", kShapePriorMin, kShapePriorMax, Scale::Linear, false},
      {"b_prime", kShapePriorMin, kShapePriorMax, Scale::Linear, false},
      {"lambda", 1e-3, 1e3, Scale::Log10, false},
      {"sample_size", static_cast<double>(sample_size_min), static_cast<double>(sample_size_max), Scale::Linear, true},
      {"po", 0.0, 1.0, Scale::Linear, false},
  };
  return space;
}

Dataset concatenate(const Dataset& a, const Dataset& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.dim() != b.dim() || a.class_count != b.class_count) throw Error("cannot concatenate incompatible datasets");
  Dataset out = empty_like(a, a.size() + b.size());
  out.features.topRows(static_cast<Eigen::Index>(a.size())) = a.features;
  out.features.bottomRows(static_cast<Eigen::Index>(b.size())) = b.features;
  std::copy(a.labels.begin(), a.labels.end(), out.labels.begin());
  std::copy(b.labels.begin(), b.labels.end(), out.labels.begin() + static_cast<std::ptrdiff_t>(a.size()));
  return out;
}

Dataset stratified_resample(const Dataset& data, std::size_t n, Rng& rng) {
  if (data.empty()) throw Error("cannot resample an empty dataset");
  const auto k = static_cast<std::size_t>(data.class_count);
  std::vector<std::vector<std::size_t>> by_class(k);
  for (std::size_t i = 0; i < data.size(); ++i) by_class[static_cast<std::size_t>(data.labels[i])].push_back(i);

  std::vector<std::size_t> quota(k, 0);
  std::vector<std::pair<double, std::size_t>> remainder;
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < k; ++c) {
    const double exact = static_cast<double>(n) * static_cast<double>(by_class[c].size()) / static_cast<double>(data.size());
    quota[c] = static_cast<std::size_t>(std::floor(exact));
    assigned += quota[c];
    if (!by_class[c].empty()) remainder.emplace_back(exact - std::floor(exact), c);
  }
  std::stable_sort(remainder.begin(), remainder.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++quota[remainder[i % remainder.size()].second];

  std::vector<std::size_t> picks;
  picks.reserve(n);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t j = 0; j < quota[c]; ++j) picks.push_back(by_class[c][rng.index(by_class[c].size())]);
  return subset(data, picks);
}

namespace {

std::size_t original_count(const SamplerParams& params, const SearchConfig& config) {
  const double po = adjust_po(params.po, config.po_low, config.po_high);
  return std::min(params.sample_size,
                  static_cast<std::size_t>(std::llround(po * static_cast<double>(params.sample_size))));
}

}  // namespace

Dataset draw_training_sample(const SamplerParams& params, const Dataset& train, const BagSampler& sampler,
                             const SearchConfig& config, Rng& rng) {
  if (params.sample_size < 1) throw Error("sample size must be at least 1");
  const std::size_t n_original = original_count(params, config);
  const std::size_t n_bag = params.sample_size - n_original;
  Dataset original = n_original > 0 ? stratified_resample(train, n_original, rng) : empty_like(train);
  if (n_bag == 0) return original;
  const auto depths = sample_depth_values(n_bag, params.depth, rng);
  return concatenate(original, sampler.sample(depths, config.entropy_threshold, rng));
}

Dataset draw_training_sample(const SamplerParams& params, const Dataset& train, const Bag& bag,
                             const SearchConfig& config, Rng& rng) {
  return draw_training_sample(params, train, BagSampler(bag, params.lambda), config, rng);
}

SearchResult run_search(const LearnerSpec& learner, const Splits& splits, const Bag& bag,
                        const SearchConfig& config, std::uint64_t seed) {
  if (config.budget < 1) throw Error("search budget must be at least 1");
  if (config.repeats < 1) throw Error("repeats must be at least 1");
  if (splits.train.empty() || splits.validation.empty()) throw Error("search needs nonempty train and validation splits");
  adjust_po(0.5, config.po_low, config.po_high);
  const SearchSpace space = sampler_search_space(config.sample_size_min, config.sample_size_max);

  SearchResult result;
  Rng optimizer_rng(derive_seed(seed, 0));
  for (std::size_t t = 1; t <= config.budget; ++t) {
    Trial trial;
    trial.index = t;
    trial.values = suggest(space, result.trials, config.strategy, config.tpe, optimizer_rng);
    if (t == 1) {
      trial.pinned = true;
      trial.values[6] = static_cast<double>(std::min(config.sample_size_max, splits.train.size()));
      trial.values[7] = 1.0;
    }
    trial.seed = derive_seed(seed, t);
    const SamplerParams params = SamplerParams::from_values(trial.values, config.shape_scale);
    const BagSampler sampler(bag, params.lambda);
    for (std::size_t r = 0; r < config.repeats; ++r) {
      Rng rng(derive_seed(seed, t, r));
      const Dataset sample = draw_training_sample(params, splits.train, sampler, config, rng);
      trial.repeat_scores.push_back(macro_f1(train(learner, sample), splits.validation));
    }
    trial.score = std::accumulate(trial.repeat_scores.begin(), trial.repeat_scores.end(), 0.0) /
                  static_cast<double>(config.repeats);
    result.trials.push_back(std::move(trial));
  }

  for (std::size_t i = 1; i < result.trials.size(); ++i)
    if (result.trials[i].score > result.trials[result.best_trial].score) result.best_trial = i;
  const Trial& best = result.trials[result.best_trial];
  result.best = SamplerParams::from_values(best.values, config.shape_scale);
  result.best_adjusted_po = adjust_po(result.best.po, config.po_low, config.po_high);
  result.best_validation = best.score;

  const SamplerParams baseline = SamplerParams::from_values(result.trials.front().values, config.shape_scale);
  const BagSampler best_sampler(bag, result.best.lambda);
  const BagSampler baseline_sampler(bag, baseline.lambda);
  double test_sum = 0.0;
  double baseline_sum = 0.0;
  for (std::size_t r = 0; r < config.repeats; ++r) {
    const std::uint64_t test_seed = derive_seed(seed, 0, r + 1);
    Rng rng(test_seed);
    SizedModel model = train(learner, draw_training_sample(result.best, splits.train, best_sampler, config, rng));
    test_sum += macro_f1(model, splits.test);
    result.realized_size = std::max(result.realized_size, model.realized_size());
    if (!result.model) result.model = std::move(model);
    Rng baseline_rng(test_seed);
    baseline_sum += macro_f1(train(learner, draw_training_sample(baseline, splits.train, baseline_sampler, config,
                                                                 baseline_rng)),
                             splits.test);
  }
  result.test_f1 = test_sum / static_cast<double>(config.repeats);
  result.baseline_test_f1 = baseline_sum / static_cast<double>(config.repeats);
  return result;
}

nlohmann::json trial_to_json(const Trial& trial, const std::vector<std::string>& names) {
  nlohmann::json params = nlohmann::json::object();
  for (std::size_t i = 0; i < trial.values.size(); ++i)
    params[i < names.size() ? names[i] : "x" + std::to_string(i)] = trial.values[i];
  return {{"t", trial.index},       {"params", params}, {"repeat_scores", trial.repeat_scores},
          {"score", trial.score},   {"seed", trial.seed}, {"pinned", trial.pinned}};
}

std::string trial_log(const SearchResult& result) {
  std::vector<std::string> names;
  for (const auto& v : sampler_search_space().variables) names.push_back(v.name);
  std::ostringstream out;
  for (const auto& trial : result.trials) out << trial_to_json(trial, names).dump() << '\n';
  return out.str();
}

nlohmann::json result_to_json(const SearchResult& result) {
  nlohmann::json j = {{"best_trial", result.trials.empty() ? 0 : result.trials[result.best_trial].index},
                      {"best", result.best.to_json()},
                      {"best_adjusted_po", result.best_adjusted_po},
                      {"best_validation", result.best_validation},
                      {"test_f1", result.test_f1},
                      {"baseline_test_f1", result.baseline_test_f1},
                      {"delta_f1", floored_delta_f1(result.test_f1, result.baseline_test_f1)},
                      {"realized_size", result.realized_size}};
  if (result.model) j["model"] = result.model->summary();
  return j;
}

}  // namespace adasample
