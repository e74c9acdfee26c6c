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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "adasample/error.hpp"
#include "adasample/harness.hpp"
#include "adasample/synthetic.hpp"

namespace adasample {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

long long parse_integer(const std::string& s, std::size_t line, const std::string& key) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(line, "'" + key + "' expects an integer, got '" + s + "'");
}

std::size_t parse_count(const std::string& s, std::size_t line, const std::string& key) {
  const long long v = parse_integer(s, line, key);
  if (v < 0) throw ParseError(line, "'" + key + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

double parse_real(const std::string& s, std::size_t line, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(line, "'" + key + "' expects a number, got '" + s + "'");
}

std::vector<int> parse_sizes(const std::string& value, std::size_t line) {
  std::vector<int> sizes;
  for (const auto& item : split_list(value)) {
    const auto dash = item.find('-', 1);
    if (dash != std::string::npos) {
      const long long lo = parse_integer(trim(item.substr(0, dash)), line, "sizes");
      const long long hi = parse_integer(trim(item.substr(dash + 1)), line, "sizes");
      if (lo > hi) throw ParseError(line, "size range '" + item + "' is decreasing");
      for (long long s = lo; s <= hi; ++s) sizes.push_back(static_cast<int>(s));
    } else {
      sizes.push_back(static_cast<int>(parse_integer(item, line, "sizes")));
    }
  }
  return sizes;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (dataset.empty()) throw Error("config needs a dataset");
  if (sizes.empty()) throw Error("config needs at least one size");
  for (int s : sizes)
    if (s < 1) throw Error("sizes must be at least 1");
  if (budget < 1) throw Error("budget must be at least 1");
  if (repeats < 1) throw Error("repeats must be at least 1");
  if (seeds.empty()) throw Error("config needs at least one seed");
  if (sample_size_min < 1 || sample_size_min >= sample_size_max) throw Error("ns_min must be in [1, ns_max)");
  if (bag_size < 1) throw Error("bag_size must be at least 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("epsilon must lie in (0, 1)");
  if (!(entropy_threshold >= 0.0 && entropy_threshold <= 1.0)) throw Error("entropy_threshold must lie in [0, 1]");
  if (!(po_low >= 0.0 && po_low < po_high && po_high <= 1.0)) throw Error("p_o thresholds need 0 <= po_low < po_high <= 1");
  if (!(shape_scale > 0.0)) throw Error("shape_scale must be positive");
  if (min_leaf < 1) throw Error("min_leaf must be at least 1");
  if (gbm_max_depth < 1) throw Error("gbm_max_depth must be at least 1");
  if (!(gbm_learning_rate > 0.0)) throw Error("gbm_learning_rate must be positive");
  const double total = fractions.train + fractions.validation + fractions.test;
  if (!(fractions.train > 0.0 && fractions.validation > 0.0 && fractions.test > 0.0) || std::abs(total - 1.0) > 1e-9)
    throw Error("split fractions must be positive and sum to 1");
}

SearchConfig ExperimentConfig::search_config() const {
  SearchConfig c;
  c.budget = budget;
  c.repeats = repeats;
  c.sample_size_min = sample_size_min;
  c.sample_size_max = sample_size_max;
  c.entropy_threshold = entropy_threshold;
  c.po_low = po_low;
  c.po_high = po_high;
  c.shape_scale = shape_scale;
  c.strategy = optimizer;
  return c;
}

LearnerSpec ExperimentConfig::learner(int size) const {
  LearnerSpec spec;
  spec.family = family;
  spec.size = size;
  spec.gbm_max_depth = gbm_max_depth;
  spec.gbm_learning_rate = gbm_learning_rate;
  return spec;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::map<std::string, std::size_t> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(std::string_view(raw).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ParseError(line, "missing key");
    if (!seen.emplace(key, line).second) throw ParseError(line, "duplicate key '" + key + "'");

    try {
      if (key == "dataset") c.dataset = value;
      else if (key == "name") c.name = value;
      else if (key == "family") c.family = parse_family(value);
      else if (key == "gbm_max_depth") c.gbm_max_depth = static_cast<int>(parse_integer(value, line, key));
      else if (key == "gbm_learning_rate") c.gbm_learning_rate = parse_real(value, line, key);
      else if (key == "sizes") c.sizes = parse_sizes(value, line);
      else if (key == "budget") c.budget = parse_count(value, line, key);
      else if (key == "repeats") c.repeats = parse_count(value, line, key);
      else if (key == "seeds") {
        c.seeds.clear();
        for (const auto& s : split_list(value)) c.seeds.push_back(static_cast<std::uint64_t>(parse_count(s, line, key)));
      }
      else if (key == "ns_min") c.sample_size_min = parse_count(value, line, key);
      else if (key == "ns_max") c.sample_size_max = parse_count(value, line, key);
      else if (key == "bag_size") c.bag_size = parse_count(value, line, key);
      else if (key == "epsilon") c.epsilon = parse_real(value, line, key);
      else if (key == "entropy_threshold") c.entropy_threshold = parse_real(value, line, key);
      else if (key == "po_low") c.po_low = parse_real(value, line, key);
      else if (key == "po_high") c.po_high = parse_real(value, line, key);
      else if (key == "shape_scale") c.shape_scale = parse_real(value, line, key);
      else if (key == "min_leaf") c.min_leaf = parse_count(value, line, key);
      else if (key == "optimizer") c.optimizer = parse_strategy(value);
      else if (key == "train_fraction") c.fractions.train = parse_real(value, line, key);
      else if (key == "validation_fraction") c.fractions.validation = parse_real(value, line, key);
      else if (key == "test_fraction") c.fractions.test = parse_real(value, line, key);
      else if (key == "split_seed") c.split_seed = static_cast<std::uint64_t>(parse_count(value, line, key));
      else if (key == "output_dir") c.output_dir = value;
      else throw ParseError(line, "unknown key '" + key + "'");
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line, e.what());
    }
  }
  if (c.name.empty()) c.name = dataset_label(c.dataset);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  ExperimentConfig c;
  try {
    c = parse_config(buf.str());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
  namespace fs = std::filesystem;
  const fs::path base = fs::path(path).parent_path();
  if (c.dataset.rfind("synthetic:", 0) != 0 && fs::path(c.dataset).is_relative())
    c.dataset = (base / c.dataset).lexically_normal().string();
  if (!c.output_dir.empty() && fs::path(c.output_dir).is_relative())
    c.output_dir = (base / c.output_dir).lexically_normal().string();
  if (const char* env = std::getenv("ADASAMPLE_OUT_DIR"); env && *env) c.output_dir = env;
  return c;
}

std::string dataset_label(const std::string& dataset) {
  if (dataset.rfind("synthetic:", 0) == 0) {
    std::string label = dataset.substr(10);
    for (char& ch : label)
      if (ch == ':') ch = '_';
    return "synthetic_" + label;
  }
  return std::filesystem::path(dataset).stem().string();
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  return {{"dataset", c.dataset},
          {"name", c.name},
          {"family", to_string(c.family)},
          {"gbm_max_depth", c.gbm_max_depth},
          {"gbm_learning_rate", c.gbm_learning_rate},
          {"sizes", c.sizes},
          {"budget", c.budget},
          {"repeats", c.repeats},
          {"seeds", c.seeds},
          {"ns_min", c.sample_size_min},
          {"ns_max", c.sample_size_max},
          {"bag_size", c.bag_size},
          {"epsilon", c.epsilon},
          {"entropy_threshold", c.entropy_threshold},
          {"po_low", c.po_low},
          {"po_high", c.po_high},
          {"shape_scale", c.shape_scale},
          {"min_leaf", c.min_leaf},
          {"optimizer", to_string(c.optimizer)},
          {"train_fraction", c.fractions.train},
          {"validation_fraction", c.fractions.validation},
          {"test_fraction", c.fractions.test},
          {"split_seed", c.split_seed}};
}

Dataset load_dataset(const std::string& dataset) {
  if (dataset.rfind("synthetic:", 0) == 0) return synthetic::from_spec(dataset);
  return load_sparse_dataset(dataset);
}

}  // namespace adasample
