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

#ifndef ADASAMPLE_TREES_HPP_
#define ADASAMPLE_TREES_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "adasample/data.hpp"

namespace adasample {

class Rng;

// Intervals narrower than this are widened before computing a diagonal.
inline constexpr double kMinRegionWidth = 1e-12;

// Axis-aligned region, one closed interval per dimension.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  static Box unit(std::size_t dim);
  // Tightest box around the rows of `features`.
  static Box bounding(const Eigen::MatrixXd& features);

  std::size_t dim() const { return lo.size(); }
  double diagonal() const;
  double volume() const;
  bool contains(std::span<const double> point, double slack = 0.0) const;
};

struct TreeNode {
  // Split x[feature] <= threshold goes left. feature < 0 marks a leaf.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int parent = -1;
  int depth = 0;
  Box region;
  // Indices into the training set, ascending. Empty when the tree was fitted
  // without keeping memberships.
  std::vector<std::uint32_t> members;
  std::vector<std::uint32_t> histogram;

  bool is_leaf() const { return feature < 0; }
  std::size_t count() const;
};

struct CartOptions {
  std::optional<int> max_depth;
  std::size_t min_leaf = 1;
  // Region of the root node; the unit box when unset.
  std::optional<Box> root_box;
  bool keep_members = true;
};

// A CART tree. Fitted without size restrictions it serves as a density tree:
// its node regions carry the boundary-locating pmf used for sampling.
class DensityTree {
 public:
  DensityTree() = default;
  // Adopts an explicit node list (root at index 0). Validates structure.
  DensityTree(std::vector<TreeNode> nodes, int class_count);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  const TreeNode& root() const { return nodes_.front(); }
  int max_depth() const { return max_depth_; }
  int class_count() const { return class_count_; }
  std::size_t dim() const { return nodes_.empty() ? 0 : nodes_.front().region.dim(); }
  std::size_t leaf_count() const;

  int leaf_for(std::span<const double> point) const;
  int predict(std::span<const double> point) const;
  std::vector<int> predict(const Eigen::MatrixXd& features) const;

  nlohmann::json to_json() const;
  static DensityTree from_json(const nlohmann::json& doc);

 private:
  std::vector<TreeNode> nodes_;
  int class_count_ = 0;
  int max_depth_ = 0;
};

// Grows a Gini-impurity CART tree over (feature, midpoint-threshold)
// candidates. Splitting stops at pure nodes, at max_depth, at nodes with fewer
// than 2 * min_leaf instances, or when no feature varies within the node.
DensityTree fit_cart(const Dataset& train, const CartOptions& options = {});

// Weighted child impurity n_l * gini_l + n_r * gini_r from class counts.
// Arguments are the child sizes and the sums of squared class counts.
double gini_split_score(std::int64_t left_n, std::int64_t left_sq, std::int64_t right_n,
                        std::int64_t right_sq);

// Nodes forming the sampling scheme at depth `level`: internal nodes at that
// depth plus leaves above it. Their regions tile the root region.
std::vector<int> scheme_at_depth(const DensityTree& tree, int level);

// Maps a normalized depth r in [0, 1] to min(floor(r * D), D).
int depth_index(int max_depth, double r);
int depth_index(const DensityTree& tree, double r);

struct Pmf {
  std::vector<int> nodes;
  std::vector<double> probabilities;

  std::size_t size() const { return nodes.size(); }
  // Running sums of probabilities, for sampling.
  std::vector<double> cumulative() const;
};

// Non-normalized region masses. The diagonal rule is the one used for
// sampling; the volume rule exists for comparison only (it scales as 2^d
// between a cube and its half-edge copy).
double inverse_diagonal_mass(const Box& region);
double inverse_volume_mass(const Box& region);

// pmf over `nodes` proportional to the inverse region diagonal.
Pmf base_pmf(const DensityTree& tree, std::span<const int> nodes);
// Laplace smoothing: f'(i) = c * (f(i) + lambda / m).
Pmf smooth_pmf(const Pmf& pmf, double lambda);

// Shannon entropy of a label histogram divided by log2(k), in [0, 1].
double normalized_entropy(std::span<const std::uint32_t> histogram);
double node_entropy(const TreeNode& node);
// Argmax of the histogram; ties go to the smallest class index.
int majority_label(std::span<const std::uint32_t> histogram);
int majority_label(const TreeNode& node);

void sample_uniform_in_region(const Box& region, Rng& rng, std::span<double> out);
std::vector<double> sample_uniform_in_region(const Box& region, Rng& rng);

}  // namespace adasample

#endif  // ADASAMPLE_TREES_HPP_
