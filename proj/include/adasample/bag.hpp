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

#ifndef ADASAMPLE_BAG_HPP_
#define ADASAMPLE_BAG_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "adasample/data.hpp"
#include "adasample/depthdist.hpp"
#include "adasample/trees.hpp"
#include "json.hpp"

namespace adasample {

class Rng;

inline constexpr double kDefaultEpsilon = 0.2;
inline constexpr double kDefaultEntropyThreshold = 0.15;
inline constexpr std::size_t kDefaultBagSize = 5;

// Unit-diagonal shear with off-diagonal entries in [0, epsilon].
struct Transform {
  Eigen::MatrixXd forward;
  Eigen::MatrixXd inverse;

  static Transform identity(std::size_t dim);
  std::size_t dim() const { return static_cast<std::size_t>(forward.rows()); }
  // Largest absolute entry of forward * inverse - I.
  double inverse_residual() const;
};

// Draws the off-diagonals uniformly and inverts with partially pivoted LU.
// Draws whose inverse fails the residual check are retried up to 5 times.
Transform near_identity_matrix(std::size_t dim, double epsilon, Rng& rng);

// One density tree with the transform it was learned under, plus the
// per-node quantities sampling needs.
struct BagMember {
  DensityTree tree;
  Transform transform;
  // Training features mapped through the transform (row i = A x_i).
  Eigen::MatrixXd transformed_features;
  // schemes[l] / base_pmfs[l]: sampling scheme at depth l and its pmf.
  std::vector<std::vector<int>> schemes;
  std::vector<Pmf> base_pmfs;
  std::vector<double> entropy;
  std::vector<int> majority;
};

class Bag {
 public:
  Bag() = default;
  Bag(std::vector<BagMember> members, std::vector<int> labels, int class_count,
      std::vector<double> raw_labels = {});

  const std::vector<BagMember>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  std::size_t dim() const;
  int class_count() const { return class_count_; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<double>& raw_labels() const { return raw_labels_; }

  nlohmann::json to_json() const;
  static Bag from_json(const nlohmann::json& doc);

 private:
  std::vector<BagMember> members_;
  std::vector<int> labels_;
  int class_count_ = 0;
  std::vector<double> raw_labels_;
};

struct BagOptions {
  std::size_t size = kDefaultBagSize;
  double epsilon = kDefaultEpsilon;
  std::size_t min_leaf = 1;
};

// Fills in schemes, pmfs, entropies and majority labels for a fitted tree.
BagMember make_bag_member(DensityTree tree, Transform transform, Eigen::MatrixXd transformed);

// Fits one unrestricted tree per near-identity transform of the training
// features. Each tree's root region is the bounding box of its transformed
// training data.
Bag build_bag(const Dataset& train, const BagOptions& options, Rng& rng);
// Same, with caller-supplied transforms.
Bag build_bag(const Dataset& train, std::vector<Transform> transforms, std::size_t min_leaf = 1);

// Where one sampled point came from.
struct BagDraw {
  std::size_t member = 0;
  int node = -1;
  int level = 0;
  bool synthetic = false;
  // Training index when the point was resampled rather than synthesized.
  std::optional<std::size_t> source;
  std::vector<double> transformed_point;
};

// Per-trial sampler: the smoothed pmf tables for one lambda.
class BagSampler {
 public:
  BagSampler(const Bag& bag, double lambda);

  // One point per entry of depth_values. Each draw picks a tree uniformly,
  // a node from the smoothed scheme at that tree's depth, then either a
  // uniform point with the node's majority label (entropy <= E) or one of
  // the node's training pairs. Points are mapped back through A^-1.
  Dataset sample(std::span<const double> depth_values, double entropy_threshold, Rng& rng,
                 std::vector<BagDraw>* trace = nullptr) const;

  const Pmf& smoothed(std::size_t member, int level) const;

 private:
  const Bag* bag_;
  double lambda_;
  std::vector<std::vector<Pmf>> smoothed_;
  std::vector<std::vector<std::vector<double>>> cdfs_;
};

Dataset sample_from_bag(std::size_t n, const Bag& bag, const DepthDistParams& depth, double lambda,
                        double entropy_threshold, Rng& rng);

}  // namespace adasample

#endif  // ADASAMPLE_BAG_HPP_
