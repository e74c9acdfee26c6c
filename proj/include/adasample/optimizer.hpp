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

#ifndef ADASAMPLE_OPTIMIZER_HPP_
#define ADASAMPLE_OPTIMIZER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adasample/bag.hpp"
#include "adasample/data.hpp"
#include "adasample/depthdist.hpp"
#include "adasample/learners.hpp"
#include "json.hpp"

namespace adasample {

class Rng;

enum class Scale { Linear, Log10 };

struct Variable {
  std::string name;
  // Bounds in natural units; a Log10 variable is searched over log10 of them.
  double lower = 0.0;
  double upper = 1.0;
  Scale scale = Scale::Linear;
  bool integer = false;

  double to_internal(double value) const;
  double from_internal(double u) const;
  double internal_lower() const { return to_internal(lower); }
  double internal_upper() const { return to_internal(upper); }
};

struct SearchSpace {
  std::vector<Variable> variables;

  std::size_t size() const { return variables.size(); }
  void validate() const;
  bool contains(std::span<const double> values) const;
  // Snaps into the box and rounds integer variables.
  std::vector<double> clip(std::vector<double> values) const;
};

struct Trial {
  std::size_t index = 0;  // 1-based
  std::vector<double> values;
  std::vector<double> repeat_scores;
  double score = 0.0;
  std::uint64_t seed = 0;
  bool pinned = false;
};

enum class Strategy { TPE, Random };

std::string to_string(Strategy strategy);
Strategy parse_strategy(const std::string& name);

struct TpeConfig {
  double gamma = 0.25;
  std::size_t startup_trials = 20;
  std::size_t candidates = 24;
};

// Next point to evaluate (natural units). Scores are maximized. TPE draws
// uniformly during startup, then splits history at the gamma quantile, fits
// per-variable truncated-Gaussian Parzen densities l (good) and g (bad) and
// returns the candidate drawn from l with the largest l(x) / g(x).
std::vector<double> suggest(const SearchSpace& space, std::span<const Trial> history, Strategy strategy,
                            const TpeConfig& config, Rng& rng);

// Ask/tell wrapper around `suggest` for plain objective functions.
std::vector<Trial> maximize(const SearchSpace& space, const std::function<double(std::span<const double>)>& objective,
                            std::size_t budget, Strategy strategy, const TpeConfig& config, std::uint64_t seed);

// Values below `low` become 0, above `high` become 1.
double adjust_po(double po, double low, double high);

// One candidate training distribution.
struct SamplerParams {
  DepthDistParams depth;
  double lambda = 1.0;
  std::size_t sample_size = 1000;
  double po = 0.0;

  std::vector<double> to_values() const;
  static SamplerParams from_values(std::span<const double> values, double shape_scale = 1.0);
  nlohmann::json to_json() const;
  static SamplerParams from_json(const nlohmann::json& j);
};

// The eight searched variables: alpha, a, b, a', b', lambda (log10), N_s, p_o.
SearchSpace sampler_search_space(std::size_t sample_size_min = 1000, std::size_t sample_size_max = 10000);

struct SearchConfig {
  std::size_t budget = 300;
  std::size_t repeats = 3;
  std::size_t sample_size_min = 1000;
  std::size_t sample_size_max = 10000;
  double entropy_threshold = kDefaultEntropyThreshold;
  double po_low = 0.1;
  double po_high = 0.9;
  double shape_scale = 1.0;
  Strategy strategy = Strategy::TPE;
  TpeConfig tpe;
};

// Per-class proportional allocation (largest remainder) of n draws with
// replacement from `data`.
Dataset stratified_resample(const Dataset& data, std::size_t n, Rng& rng);

// Training sample for one evaluation: round(adjusted p_o * N_s) stratified
// draws from the training split followed by the rest from the bag.
Dataset draw_training_sample(const SamplerParams& params, const Dataset& train, const Bag& bag,
                             const SearchConfig& config, Rng& rng);
Dataset draw_training_sample(const SamplerParams& params, const Dataset& train, const BagSampler& sampler,
                             const SearchConfig& config, Rng& rng);

// Rows of `a` followed by rows of `b`.
Dataset concatenate(const Dataset& a, const Dataset& b);

struct SearchResult {
  std::vector<Trial> trials;
  std::size_t best_trial = 0;  // index into trials
  SamplerParams best;
  double best_adjusted_po = 0.0;
  double best_validation = 0.0;
  // Mean test macro-F1 over `repeats` models retrained from the best trial,
  // and from the pinned original-distribution trial with the same seeds.
  double test_f1 = 0.0;
  double baseline_test_f1 = 0.0;
  std::optional<SizedModel> model;
  int realized_size = 0;
};

// Adaptive sampling search. Trial 1 is pinned to p_o = 1 and
// N_s = min(N_s max, |train|), so the original distribution is always a
// candidate. Validation and test splits are never sampled from.
SearchResult run_search(const LearnerSpec& learner, const Splits& splits, const Bag& bag,
                        const SearchConfig& config, std::uint64_t seed);

nlohmann::json trial_to_json(const Trial& trial, const std::vector<std::string>& names);
// JSON-lines trial log for a sampler search.
std::string trial_log(const SearchResult& result);
nlohmann::json result_to_json(const SearchResult& result);

}  // namespace adasample

#endif  // ADASAMPLE_OPTIMIZER_HPP_
