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

#ifndef ADASAMPLE_HARNESS_HPP_
#define ADASAMPLE_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adasample/data.hpp"
#include "adasample/learners.hpp"
#include "adasample/optimizer.hpp"
#include "adasample/report.hpp"
#include "json.hpp"

namespace adasample {

struct ExperimentConfig {
  std::string dataset;  // LIBSVM path or synthetic:<kind>[:n[:seed[:shape]]]
  std::string name;     // label used in reports; defaults to the dataset stem
  Family family = Family::DT;
  int gbm_max_depth = 2;
  double gbm_learning_rate = 0.1;
  std::vector<int> sizes{1, 2, 3, 4, 5};
  std::size_t budget = 300;
  std::size_t repeats = 3;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::size_t sample_size_min = 1000;
  std::size_t sample_size_max = 10000;
  std::size_t bag_size = 5;
  double epsilon = 0.2;
  double entropy_threshold = 0.15;
  double po_low = 0.1;
  double po_high = 0.9;
  double shape_scale = 1.0;
  std::size_t min_leaf = 1;
  Strategy optimizer = Strategy::TPE;
  SplitFractions fractions;
  std::uint64_t split_seed = 0;
  std::string output_dir;  // empty: nothing written

  void validate() const;
  SearchConfig search_config() const;
  LearnerSpec learner(int size) const;
};

// Flat `key = value` lines; '#' starts a comment. Sizes accept "1,2,5" or
// "1-5"; seeds accept comma lists.
ExperimentConfig parse_config(std::string_view text);
// Relative dataset paths resolve against the config file's directory and
// ADASAMPLE_OUT_DIR, when set, overrides output_dir.
ExperimentConfig load_config(const std::string& path);
std::string dataset_label(const std::string& dataset);
nlohmann::json config_to_json(const ExperimentConfig& config);

Dataset load_dataset(const std::string& dataset);

// Largest-validation-F1 depth of an unconstrained CART tree on the training
// split (smallest depth on ties).
int optimal_tree_depth(const Splits& splits);

struct RunRecord {
  int size = 0;
  std::uint64_t seed = 0;
  SearchResult result;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<RunRecord> runs;
  int optimal_size = 0;  // DT only
};

// Searches every size in turn, once per seed, and averages across seeds.
// Writes results.json, report.csv and trials/size<η>_seed<s>.jsonl when an
// output directory is configured.
ExperimentResult run_experiment(const ExperimentConfig& config);

nlohmann::json experiment_to_json(const ExperimentConfig& config, const ExperimentResult& result);
void write_experiment(const std::string& dir, const ExperimentConfig& config, const ExperimentResult& result);
std::vector<ResultRow> load_result_rows(const std::string& dir);

struct DepthSummary {
  std::vector<std::size_t> allocations;  // per row
  std::vector<double> values;            // pooled depth draws
  double bandwidth = 0.0;
  std::vector<std::pair<double, double>> curve;
};

inline constexpr std::size_t kDepthSummaryGrid = 256;

// floor(N * dF1_i / sum dF1) draws per row, or N / rows each when every
// dF1 is zero.
std::vector<std::size_t> depth_allocations(std::span<const double> delta_f1, std::size_t n);

// Pools depth values drawn from each row's optimal depth distributions and
// fits a Gaussian KDE on a grid over [-0.1, 1.1].
DepthSummary depth_summary(const std::vector<ResultRow>& rows, std::size_t n, std::uint64_t seed);
std::string depth_summary_csv(const DepthSummary& summary);

}  // namespace adasample

#endif  // ADASAMPLE_HARNESS_HPP_
