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

#include "adasample/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "adasample/bag.hpp"
#include "adasample/error.hpp"
#include "adasample/kde.hpp"
#include "adasample/random.hpp"

namespace adasample {

namespace {

constexpr std::uint64_t kBagStream = 0xba9;

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string trial_log_name(int size, std::uint64_t seed) {
  return "size" + std::to_string(size) + "_seed" + std::to_string(seed) + ".jsonl";
}

}  // namespace

int optimal_tree_depth(const Splits& splits) {
  CartOptions options;
  options.keep_members = false;
  const int full = std::max(1, fit_cart(splits.train, options).max_depth());
  int best_depth = 1;
  double best = -1.0;
  for (int depth = 1; depth <= full; ++depth) {
    const double f1 = macro_f1(train_dt(splits.train, depth), splits.validation);
    if (f1 > best) {
      best = f1;
      best_depth = depth;
    }
  }
  return best_depth;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const Dataset raw = load_dataset(config.dataset);
  const Splits splits = prepare_splits(raw, config.fractions, config.split_seed);
  const SearchConfig search = config.search_config();
  const std::string family = to_string(config.family);

  ExperimentResult out;
  if (config.family == Family::DT) out.optimal_size = optimal_tree_depth(splits);

  std::vector<Bag> bags;
  BagOptions bag_options;
  bag_options.size = config.bag_size;
  bag_options.epsilon = config.epsilon;
  bag_options.min_leaf = config.min_leaf;
  for (std::uint64_t seed : config.seeds) {
    Rng rng(derive_seed(seed, kBagStream));
    bags.push_back(build_bag(splits.train, bag_options, rng));
  }

  for (int size : config.sizes) {
    ResultRow row;
    row.dataset = config.name;
    row.family = family;
    row.size_requested = size;
    row.seeds = config.seeds;
    double f1_new = 0.0;
    double f1_baseline = 0.0;
    double po = 0.0;
    for (std::size_t s = 0; s < config.seeds.size(); ++s) {
      const std::uint64_t seed = config.seeds[s];
      RunRecord record{size, seed, {}};
      try {
        record.result = run_search(config.learner(size), splits, bags[s], search, seed);
      } catch (const std::exception& e) {
        throw Error(std::string(e.what()) + " (dataset " + config.name + ", size " + std::to_string(size) + ", seed " +
                    std::to_string(seed) + ")");
      }
      f1_new += record.result.test_f1;
      f1_baseline += record.result.baseline_test_f1;
      po += record.result.best_adjusted_po;
      row.size_realized = std::max(row.size_realized, record.result.realized_size);
      row.params.push_back(record.result.best);
      out.runs.push_back(std::move(record));
    }
    const auto seeds = static_cast<double>(config.seeds.size());
    row.f1_new = f1_new / seeds;
    row.f1_baseline = f1_baseline / seeds;
    row.po = po / seeds;
    row.delta_f1 = floored_delta_f1(row.f1_new, row.f1_baseline);

    const bool duplicate =
        config.family == Family::DT && std::any_of(out.rows.begin(), out.rows.end(), [&](const ResultRow& r) {
          return r.size_realized == row.size_realized;
        });
    if (!duplicate) out.rows.push_back(std::move(row));
    if (config.family == Family::DT && size >= out.optimal_size) break;
  }

  if (!config.output_dir.empty()) write_experiment(config.output_dir, config, out);
  return out;
}

nlohmann::json experiment_to_json(const ExperimentConfig& config, const ExperimentResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : result.rows) rows.push_back(row_to_json(row));
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& run : result.runs) {
    nlohmann::json j = result_to_json(run.result);
    j["size"] = run.size;
    j["seed"] = run.seed;
    j["trial_log"] = "trials/" + trial_log_name(run.size, run.seed);
    runs.push_back(std::move(j));
  }
  return {{"config", config_to_json(config)},
          {"optimal_size", result.optimal_size},
          {"rows", rows},
          {"runs", runs}};
}

void write_experiment(const std::string& dir, const ExperimentConfig& config, const ExperimentResult& result) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  fs::create_directories(root / "trials");
  for (const auto& run : result.runs) write_file(root / "trials" / trial_log_name(run.size, run.seed), trial_log(run.result));
  write_file(root / "results.json", experiment_to_json(config, result).dump(2) + "\n");
  if (!result.rows.empty()) write_file(root / "report.csv", emit_report(result.rows, ReportFormat::Csv));
}

std::vector<ResultRow> load_result_rows(const std::string& dir) {
  const auto path = std::filesystem::path(dir) / "results.json";
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
  std::vector<ResultRow> rows;
  for (const auto& j : doc.at("rows")) rows.push_back(row_from_json(j));
  if (rows.empty()) throw Error(path.string() + ": no result rows");
  return rows;
}

std::vector<std::size_t> depth_allocations(std::span<const double> delta_f1, std::size_t n) {
  if (delta_f1.empty()) throw Error("depth allocation needs at least one size");
  double total = 0.0;
  for (double d : delta_f1) {
    if (!(d >= 0.0)) throw Error("improvements must be non-negative");
    total += d;
  }
  std::vector<std::size_t> out;
  for (double d : delta_f1) {
    const double share = total > 0.0 ? static_cast<double>(n) * d / total
                                     : static_cast<double>(n) / static_cast<double>(delta_f1.size());
    out.push_back(static_cast<std::size_t>(std::floor(share)));
  }
  return out;
}

DepthSummary depth_summary(const std::vector<ResultRow>& rows, std::size_t n, std::uint64_t seed) {
  std::vector<double> deltas;
  for (const auto& row : rows) deltas.push_back(row.delta_f1);
  DepthSummary summary;
  summary.allocations = depth_allocations(deltas, n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& params = rows[i].params;
    if (params.empty()) throw Error("result row for size " + std::to_string(rows[i].size_requested) + " has no parameters");
    const std::size_t share = summary.allocations[i] / params.size();
    const std::size_t extra = summary.allocations[i] % params.size();
    for (std::size_t j = 0; j < params.size(); ++j) {
      const std::size_t count = share + (j < extra ? 1 : 0);
      if (count == 0) continue;
      Rng rng(derive_seed(seed, i + 1, j));
      const auto values = sample_depth_values(count, params[j].depth, rng);
      summary.values.insert(summary.values.end(), values.begin(), values.end());
    }
  }
  if (summary.values.size() < 2) throw Error("depth summary needs at least two draws");
  const GaussianKde kde(summary.values);
  summary.bandwidth = kde.bandwidth();
  summary.curve = kde.evaluate_grid(-0.1, 1.1, kDepthSummaryGrid);
  return summary;
}

std::string depth_summary_csv(const DepthSummary& summary) {
  std::string out = "x,density\n";
  char buf[64];
  for (const auto& [x, y] : summary.curve) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, y);
    out += buf;
  }
  return out;
}

}  // namespace adasample
