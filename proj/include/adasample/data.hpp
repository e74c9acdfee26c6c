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

#ifndef ADASAMPLE_DATA_HPP_
#define ADASAMPLE_DATA_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace adasample {

// Feature matrix (one row per instance) with contiguous class labels.
struct Dataset {
  Eigen::MatrixXd features;
  std::vector<int> labels;
  int class_count = 0;
  // raw_labels[c] is the label as it appeared in the source file.
  std::vector<double> raw_labels;

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(features.cols()); }
  bool empty() const { return labels.empty(); }

  // Instance counts per class, length class_count.
  std::vector<std::size_t> class_counts() const;
};

// Checks the structural invariants (shape agreement, label range, k >= 2).
void validate(const Dataset& data);

// Rows `indices` of `data`, in the given order. Class metadata is kept.
Dataset subset(const Dataset& data, const std::vector<std::size_t>& indices);

// An empty dataset with the same dimension and class metadata as `like`.
Dataset empty_like(const Dataset& like, std::size_t rows = 0);

// LIBSVM-style sparse text: "label idx:value ..." with 1-based indices.
Dataset parse_sparse_dataset(std::string_view text);
Dataset load_sparse_dataset(const std::string& path);
std::string write_sparse_dataset(const Dataset& data);

// Dense CSV with header "y,f0,...,f{d-1}"; y is the contiguous class index.
std::string write_csv(const Dataset& data);

struct ScalingRecord {
  // (min, max) per dimension, learned from the training split.
  std::vector<std::pair<double, double>> ranges;
};

ScalingRecord fit_scaler(const Dataset& train);
// Maps each value to (x - min) / (max - min) clamped to [0, 1]; degenerate
// dimensions map to 0.5.
Dataset apply_scaler(const ScalingRecord& record, const Dataset& data);

struct SplitFractions {
  double train = 0.6;
  double validation = 0.2;
  double test = 0.2;
};

struct Splits {
  Dataset train;
  Dataset validation;
  Dataset test;
};

// Per-class indices for each split (sorted ascending). Deterministic in seed.
std::array<std::vector<std::size_t>, 3> stratified_split_indices(
    const Dataset& data, const SplitFractions& fractions, std::uint64_t seed);

Splits stratified_split(const Dataset& data, const SplitFractions& fractions,
                        std::uint64_t seed);

// Stratified split followed by unit-box scaling fitted on the training part.
Splits prepare_splits(const Dataset& raw, const SplitFractions& fractions,
                      std::uint64_t seed);

}  // namespace adasample

#endif  // ADASAMPLE_DATA_HPP_
