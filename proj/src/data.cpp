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

#include "adasample/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "adasample/error.hpp"
#include "adasample/random.hpp"

namespace adasample {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

bool parse_index(std::string_view s, long& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

struct SparseRow {
  double label;
  std::vector<std::pair<long, double>> entries;
};

}  // namespace

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(std::max(class_count, 0)), 0);
  for (int y : labels) ++counts[static_cast<std::size_t>(y)];
  return counts;
}

void validate(const Dataset& data) {
  if (data.empty()) throw Error("dataset has no instances");
  if (static_cast<std::size_t>(data.features.rows()) != data.size())
    throw Error("feature rows do not match label count");
  if (data.dim() < 1) throw Error("dataset has no features");
  if (data.class_count < 2) throw Error("dataset needs at least two classes");
  for (int y : data.labels)
    if (y < 0 || y >= data.class_count) throw Error("label out of range");
}

Dataset subset(const Dataset& data, const std::vector<std::size_t>& indices) {
  Dataset out = empty_like(data, indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    out.features.row(static_cast<Eigen::Index>(r)) =
        data.features.row(static_cast<Eigen::Index>(indices[r]));
    out.labels[r] = data.labels[indices[r]];
  }
  return out;
}

Dataset empty_like(const Dataset& like, std::size_t rows) {
  Dataset out;
  out.features = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), like.features.cols());
  out.labels.assign(rows, 0);
  out.class_count = like.class_count;
  out.raw_labels = like.raw_labels;
  return out;
}

Dataset parse_sparse_dataset(std::string_view text) {
  std::vector<SparseRow> rows;
  long max_index = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = tokenize(line);
    if (tokens.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    SparseRow row;
    if (!parse_double(tokens[0], row.label))
      throw ParseError(line_no, "unparsable label '" + std::string(tokens[0]) + "'");
    long previous = 0;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      auto colon = tokens[t].find(':');
      if (colon == std::string_view::npos)
        throw ParseError(line_no, "expected idx:value, got '" + std::string(tokens[t]) + "'");
      long idx = 0;
      double value = 0.0;
      if (!parse_index(tokens[t].substr(0, colon), idx) || idx < 1)
        throw ParseError(line_no, "bad feature index in '" + std::string(tokens[t]) + "'");
      if (!parse_double(tokens[t].substr(colon + 1), value))
        throw ParseError(line_no, "bad feature value in '" + std::string(tokens[t]) + "'");
      if (idx == previous) throw ParseError(line_no, "duplicate index " + std::to_string(idx));
      if (idx < previous) throw ParseError(line_no, "indices not increasing at " + std::to_string(idx));
      previous = idx;
      max_index = std::max(max_index, idx);
      row.entries.emplace_back(idx, value);
    }
    rows.push_back(std::move(row));
    if (eol == text.size()) break;
  }
  if (rows.empty()) throw Error("no records");
  if (max_index == 0) throw Error("no features in any record");

  std::map<double, int> label_ids;
  for (const auto& row : rows) label_ids.emplace(row.label, 0);
  Dataset data;
  int next = 0;
  for (auto& [raw, id] : label_ids) {
    id = next++;
    data.raw_labels.push_back(raw);
  }
  data.class_count = next;
  data.features = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), max_index);
  data.labels.resize(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    data.labels[r] = label_ids.at(rows[r].label);
    for (auto [idx, value] : rows[r].entries)
      data.features(static_cast<Eigen::Index>(r), idx - 1) = value;
  }
  if (data.class_count < 2) throw Error("dataset needs at least two classes");
  return data;
}

Dataset load_sparse_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open dataset '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_sparse_dataset(buffer.str());
}

std::string write_sparse_dataset(const Dataset& data) {
  std::string out;
  for (std::size_t r = 0; r < data.size(); ++r) {
    const int y = data.labels[r];
    const double raw = static_cast<std::size_t>(y) < data.raw_labels.size()
                           ? data.raw_labels[static_cast<std::size_t>(y)]
                           : static_cast<double>(y);
    out += format_double(raw);
    for (Eigen::Index j = 0; j < data.features.cols(); ++j) {
      const double v = data.features(static_cast<Eigen::Index>(r), j);
      if (v == 0.0) continue;
      out += ' ';
      out += std::to_string(j + 1);
      out += ':';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::string write_csv(const Dataset& data) {
  std::string out = "y";
  for (std::size_t j = 0; j < data.dim(); ++j) out += ",f" + std::to_string(j);
  out += '\n';
  for (std::size_t r = 0; r < data.size(); ++r) {
    out += std::to_string(data.labels[r]);
    for (Eigen::Index j = 0; j < data.features.cols(); ++j)
      out += ',' + format_double(data.features(static_cast<Eigen::Index>(r), j));
    out += '\n';
  }
  return out;
}

ScalingRecord fit_scaler(const Dataset& train) {
  if (train.empty()) throw Error("cannot fit scaler on an empty dataset");
  ScalingRecord record;
  record.ranges.reserve(train.dim());
  for (Eigen::Index j = 0; j < train.features.cols(); ++j)
    record.ranges.emplace_back(train.features.col(j).minCoeff(), train.features.col(j).maxCoeff());
  return record;
}

Dataset apply_scaler(const ScalingRecord& record, const Dataset& data) {
  if (record.ranges.size() != data.dim())
    throw Error("scaler has " + std::to_string(record.ranges.size()) +
                " dimensions, dataset has " + std::to_string(data.dim()));
  Dataset out = data;
  for (Eigen::Index j = 0; j < out.features.cols(); ++j) {
    const auto [lo, hi] = record.ranges[static_cast<std::size_t>(j)];
    auto column = out.features.col(j);
    if (!(hi > lo)) {
      column.setConstant(0.5);
      continue;
    }
    const double width = hi - lo;
    for (Eigen::Index i = 0; i < column.size(); ++i)
      column(i) = std::clamp((column(i) - lo) / width, 0.0, 1.0);
  }
  return out;
}

std::array<std::vector<std::size_t>, 3> stratified_split_indices(
    const Dataset& data, const SplitFractions& fractions, std::uint64_t seed) {
  const std::array<double, 3> f{fractions.train, fractions.validation, fractions.test};
  for (double v : f)
    if (!(v > 0.0)) throw Error("split fractions must be positive");
  if (std::abs(f[0] + f[1] + f[2] - 1.0) > 1e-9) throw Error("split fractions must sum to 1");

  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(data.class_count));
  for (std::size_t i = 0; i < data.size(); ++i)
    by_class[static_cast<std::size_t>(data.labels[i])].push_back(i);

  // Remainders go to splits in order of decreasing fraction.
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f[a] > f[b]; });

  Rng rng(seed);
  std::array<std::vector<std::size_t>, 3> out;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& members = by_class[c];
    if (members.empty()) continue;
    if (members.size() < 3)
      throw Error("class " + std::to_string(c) + " has " + std::to_string(members.size()) +
                  " members; at least 3 are needed to stratify into 3 splits");
    rng.shuffle(std::span<std::size_t>(members));
    const std::size_t n = members.size();
    std::array<std::size_t, 3> counts{};
    std::size_t assigned = 0;
    for (std::size_t s = 0; s < 3; ++s) {
      counts[s] = static_cast<std::size_t>(std::floor(static_cast<double>(n) * f[s] + 1e-9));
      assigned += counts[s];
    }
    for (std::size_t r = 0; assigned < n; ++r, ++assigned) ++counts[order[r % 3]];
    for (std::size_t s = 0; s < 3; ++s) {
      // Every split receives at least one member of each class.
      if (counts[s] == 0) {
        auto donor = std::max_element(counts.begin(), counts.end());
        --*donor;
        counts[s] = 1;
      }
    }
    std::size_t cursor = 0;
    for (std::size_t s = 0; s < 3; ++s) {
      out[s].insert(out[s].end(), members.begin() + static_cast<std::ptrdiff_t>(cursor),
                    members.begin() + static_cast<std::ptrdiff_t>(cursor + counts[s]));
      cursor += counts[s];
    }
  }
  for (auto& split : out) std::sort(split.begin(), split.end());
  return out;
}

Splits stratified_split(const Dataset& data, const SplitFractions& fractions, std::uint64_t seed) {
  auto idx = stratified_split_indices(data, fractions, seed);
  return Splits{subset(data, idx[0]), subset(data, idx[1]), subset(data, idx[2])};
}

Splits prepare_splits(const Dataset& raw, const SplitFractions& fractions, std::uint64_t seed) {
  Splits splits = stratified_split(raw, fractions, seed);
  const ScalingRecord record = fit_scaler(splits.train);
  splits.train = apply_scaler(record, splits.train);
  splits.validation = apply_scaler(record, splits.validation);
  splits.test = apply_scaler(record, splits.test);
  return splits;
}

}  // namespace adasample
