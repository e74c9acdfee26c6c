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

#include "adasample/trees.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "adasample/error.hpp"
#include "adasample/random.hpp"

namespace adasample {

Box Box::unit(std::size_t dim) { return Box{std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)}; }

Box Box::bounding(const Eigen::MatrixXd& features) {
  Box box;
  for (Eigen::Index j = 0; j < features.cols(); ++j) {
    box.lo.push_back(features.col(j).minCoeff());
    box.hi.push_back(features.col(j).maxCoeff());
  }
  return box;
}

double Box::diagonal() const {
  double sum = 0.0;
  for (std::size_t j = 0; j < lo.size(); ++j) {
    const double w = std::max(hi[j] - lo[j], kMinRegionWidth);
    sum += w * w;
  }
  return std::sqrt(sum);
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t j = 0; j < lo.size(); ++j) v *= hi[j] - lo[j];
  return v;
}

bool Box::contains(std::span<const double> point, double slack) const {
  if (point.size() != lo.size()) return false;
  for (std::size_t j = 0; j < lo.size(); ++j)
    if (point[j] < lo[j] - slack || point[j] > hi[j] + slack) return false;
  return true;
}

std::size_t TreeNode::count() const {
  return std::accumulate(histogram.begin(), histogram.end(), std::size_t{0});
}

DensityTree::DensityTree(std::vector<TreeNode> nodes, int class_count)
    : nodes_(std::move(nodes)), class_count_(class_count) {
  if (nodes_.empty()) throw Error("tree has no nodes");
  const auto n = static_cast<int>(nodes_.size());
  for (int id = 0; id < n; ++id) {
    const TreeNode& node = nodes_[static_cast<std::size_t>(id)];
    if (node.histogram.size() != static_cast<std::size_t>(class_count))
      throw Error("node histogram length differs from class count");
    if (node.is_leaf()) {
      if (node.left != -1 || node.right != -1) throw Error("leaf node with children");
    } else {
      if (node.left <= id || node.right <= id || node.left >= n || node.right >= n)
        throw Error("internal node with invalid children");
      const TreeNode& l = nodes_[static_cast<std::size_t>(node.left)];
      const TreeNode& r = nodes_[static_cast<std::size_t>(node.right)];
      if (l.depth != node.depth + 1 || r.depth != node.depth + 1)
        throw Error("child depth must be parent depth + 1");
    }
    max_depth_ = std::max(max_depth_, node.depth);
  }
  if (nodes_.front().depth != 0) throw Error("root depth must be 0");
}

std::size_t DensityTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

int DensityTree::leaf_for(std::span<const double> point) const {
  int id = 0;
  while (!nodes_[static_cast<std::size_t>(id)].is_leaf()) {
    const TreeNode& n = nodes_[static_cast<std::size_t>(id)];
    id = point[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return id;
}

int DensityTree::predict(std::span<const double> point) const {
  return majority_label(nodes_[static_cast<std::size_t>(leaf_for(point))]);
}

std::vector<int> DensityTree::predict(const Eigen::MatrixXd& features) const {
  std::vector<int> out(static_cast<std::size_t>(features.rows()));
  std::vector<double> row(static_cast<std::size_t>(features.cols()));
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    for (Eigen::Index j = 0; j < features.cols(); ++j) row[static_cast<std::size_t>(j)] = features(i, j);
    out[static_cast<std::size_t>(i)] = predict(row);
  }
  return out;
}

nlohmann::json DensityTree::to_json() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const TreeNode& n = nodes_[id];
    nlohmann::json j{{"id", id},
                     {"depth", n.depth},
                     {"parent", n.parent},
                     {"region", {{"lo", n.region.lo}, {"hi", n.region.hi}}},
                     {"histogram", n.histogram}};
    if (!n.is_leaf()) {
      j["split"] = {{"feature", n.feature}, {"threshold", n.threshold}};
      j["children"] = {n.left, n.right};
    }
    if (!n.members.empty()) j["members"] = n.members;
    nodes.push_back(std::move(j));
  }
  return {{"class_count", class_count_}, {"max_depth", max_depth_}, {"nodes", std::move(nodes)}};
}

DensityTree DensityTree::from_json(const nlohmann::json& doc) {
  std::vector<TreeNode> nodes;
  for (const auto& j : doc.at("nodes")) {
    TreeNode n;
    n.depth = j.at("depth").get<int>();
    n.parent = j.value("parent", -1);
    n.region.lo = j.at("region").at("lo").get<std::vector<double>>();
    n.region.hi = j.at("region").at("hi").get<std::vector<double>>();
    n.histogram = j.at("histogram").get<std::vector<std::uint32_t>>();
    if (j.contains("split")) {
      n.feature = j.at("split").at("feature").get<int>();
      n.threshold = j.at("split").at("threshold").get<double>();
      n.left = j.at("children").at(0).get<int>();
      n.right = j.at("children").at(1).get<int>();
    }
    if (j.contains("members")) n.members = j.at("members").get<std::vector<std::uint32_t>>();
    nodes.push_back(std::move(n));
  }
  return DensityTree(std::move(nodes), doc.at("class_count").get<int>());
}

double gini_split_score(std::int64_t left_n, std::int64_t left_sq, std::int64_t right_n,
                        std::int64_t right_sq) {
  const double ln = static_cast<double>(left_n);
  const double rn = static_cast<double>(right_n);
  return (ln - static_cast<double>(left_sq) / ln) + (rn - static_cast<double>(right_sq) / rn);
}

namespace {

// Exact split comparisons need n^5 headroom.
__extension__ using Wide = __int128;

// Presorted CART builder. Each node owns the same [begin, end) segment of
// every per-feature ordering, so a split is a stable partition of segments.
class CartBuilder {
 public:
  CartBuilder(const Dataset& train, const CartOptions& options)
      : x_(train.features), y_(train.labels), k_(train.class_count), options_(options),
        n_(train.size()), d_(train.dim()) {
    order_.resize(d_);
    for (std::size_t j = 0; j < d_; ++j) {
      auto& ord = order_[j];
      ord.resize(n_);
      std::iota(ord.begin(), ord.end(), 0u);
      const auto col = x_.col(static_cast<Eigen::Index>(j));
      std::sort(ord.begin(), ord.end(), [&](std::uint32_t a, std::uint32_t b) {
        return col(a) < col(b) || (col(a) == col(b) && a < b);
      });
    }
    goes_left_.assign(n_, 0);
    scratch_.resize(n_);
    left_counts_.resize(static_cast<std::size_t>(k_));
  }

  DensityTree build() {
    TreeNode root;
    root.region = options_.root_box ? *options_.root_box : Box::unit(d_);
    if (root.region.dim() != d_) throw Error("root box dimension differs from data");
    root.depth = 0;
    nodes_.push_back(std::move(root));
    grow(0, 0, n_);
    return DensityTree(std::move(nodes_), k_);
  }

 private:
  struct Split {
    int feature = -1;
    std::size_t position = 0;  // left child = first `position` entries
    double threshold = 0.0;
  };

  void grow(int id, std::size_t begin, std::size_t end) {
    const std::size_t count = end - begin;
    std::vector<std::uint32_t> histogram(static_cast<std::size_t>(k_), 0);
    for (std::size_t p = begin; p < end; ++p) ++histogram[static_cast<std::size_t>(y_[order_[0][p]])];
    {
      TreeNode& node = nodes_[static_cast<std::size_t>(id)];
      node.histogram = histogram;
      if (options_.keep_members) {
        node.members.assign(order_[0].begin() + static_cast<std::ptrdiff_t>(begin),
                            order_[0].begin() + static_cast<std::ptrdiff_t>(end));
        std::sort(node.members.begin(), node.members.end());
      }
    }
    const int depth = nodes_[static_cast<std::size_t>(id)].depth;
    const bool pure =
        std::count_if(histogram.begin(), histogram.end(), [](std::uint32_t c) { return c > 0; }) <= 1;
    if (pure || count < 2 * options_.min_leaf) return;
    if (options_.max_depth && depth >= *options_.max_depth) return;

    const Split split = best_split(begin, end, histogram);
    if (split.feature < 0) return;

    // Mark and partition every ordering.
    const auto col = x_.col(split.feature);
    for (std::size_t p = begin; p < end; ++p) {
      const std::uint32_t i = order_[0][p];
      goes_left_[i] = col(i) <= split.threshold ? 1 : 0;
    }
    for (auto& ord : order_) {
      std::size_t l = begin;
      std::size_t r = 0;
      for (std::size_t p = begin; p < end; ++p) {
        const std::uint32_t i = ord[p];
        if (goes_left_[i]) ord[l++] = i;
        else scratch_[r++] = i;
      }
      std::copy(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(r),
                ord.begin() + static_cast<std::ptrdiff_t>(l));
    }
    const std::size_t mid = begin + split.position;

    TreeNode left, right;
    {
      const TreeNode& parent = nodes_[static_cast<std::size_t>(id)];
      left.region = parent.region;
      right.region = parent.region;
    }
    left.region.hi[static_cast<std::size_t>(split.feature)] = split.threshold;
    right.region.lo[static_cast<std::size_t>(split.feature)] = split.threshold;
    left.depth = right.depth = depth + 1;
    left.parent = right.parent = id;
    const int left_id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(left));
    const int right_id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(right));
    {
      TreeNode& node = nodes_[static_cast<std::size_t>(id)];
      node.feature = split.feature;
      node.threshold = split.threshold;
      node.left = left_id;
      node.right = right_id;
    }
    grow(left_id, begin, mid);
    grow(right_id, mid, end);
  }

  Split best_split(std::size_t begin, std::size_t end, const std::vector<std::uint32_t>& histogram) {
    const std::size_t count = end - begin;
    std::int64_t total_sq = 0;
    for (std::uint32_t c : histogram) total_sq += static_cast<std::int64_t>(c) * c;
    Split best;
    // Minimizing the child impurity n - sum_l/n_l - sum_r/n_r is maximizing
    // purity = (sum_l * n_r + sum_r * n_l) / (n_l * n_r); compared exactly.
    Wide best_num = -1;
    Wide best_den = 1;
    for (std::size_t j = 0; j < d_; ++j) {
      const auto& ord = order_[j];
      const auto col = x_.col(static_cast<Eigen::Index>(j));
      if (!(col(ord[begin]) < col(ord[end - 1]))) continue;
      std::fill(left_counts_.begin(), left_counts_.end(), 0);
      std::int64_t left_sq = 0;
      std::int64_t right_sq = total_sq;
      for (std::size_t p = 1; p < count; ++p) {
        const std::uint32_t moved = ord[begin + p - 1];
        const auto c = static_cast<std::size_t>(y_[moved]);
        const std::int64_t lc = left_counts_[c];
        const std::int64_t rc = static_cast<std::int64_t>(histogram[c]) - lc;
        left_sq += 2 * lc + 1;
        right_sq -= 2 * rc - 1;
        ++left_counts_[c];
        const double a = col(moved);
        const double b = col(ord[begin + p]);
        if (!(a < b)) continue;
        if (p < options_.min_leaf || count - p < options_.min_leaf) continue;
        const auto nl = static_cast<Wide>(p);
        const auto nr = static_cast<Wide>(count - p);
        const Wide num = static_cast<Wide>(left_sq) * nr + static_cast<Wide>(right_sq) * nl;
        const Wide den = nl * nr;
        if (num * best_den > best_num * den) {
          best_num = num;
          best_den = den;
          best.feature = static_cast<int>(j);
          best.position = p;
          double t = a + (b - a) / 2.0;
          if (!(t < b)) t = a;
          best.threshold = t;
        }
      }
    }
    return best;
  }

  const Eigen::MatrixXd& x_;
  const std::vector<int>& y_;
  int k_;
  CartOptions options_;
  std::size_t n_;
  std::size_t d_;
  std::vector<std::vector<std::uint32_t>> order_;
  std::vector<std::uint8_t> goes_left_;
  std::vector<std::uint32_t> scratch_;
  std::vector<std::int64_t> left_counts_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

DensityTree fit_cart(const Dataset& train, const CartOptions& options) {
  if (train.empty()) throw Error("cannot fit a tree on an empty dataset");
  if (options.min_leaf < 1) throw Error("min_leaf must be at least 1");
  if (train.class_count < 1) throw Error("dataset has no classes");
  return CartBuilder(train, options).build();
}

std::vector<int> scheme_at_depth(const DensityTree& tree, int level) {
  if (level < 0 || level > tree.max_depth())
    throw Error("depth " + std::to_string(level) + " outside [0, " + std::to_string(tree.max_depth()) + "]");
  std::vector<int> out;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const TreeNode& n = tree.node(id);
    if (n.is_leaf() || n.depth == level) {
      out.push_back(id);
      continue;
    }
    stack.push_back(n.right);
    stack.push_back(n.left);
  }
  return out;
}

int depth_index(int max_depth, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw Error("normalized depth must lie in [0, 1]");
  const int level = static_cast<int>(std::floor(r * max_depth));
  return std::min(level, max_depth);
}

int depth_index(const DensityTree& tree, double r) { return depth_index(tree.max_depth(), r); }

std::vector<double> Pmf::cumulative() const {
  std::vector<double> cdf(probabilities.size());
  std::partial_sum(probabilities.begin(), probabilities.end(), cdf.begin());
  return cdf;
}

double inverse_diagonal_mass(const Box& region) { return 1.0 / region.diagonal(); }

double inverse_volume_mass(const Box& region) { return 1.0 / region.volume(); }

Pmf base_pmf(const DensityTree& tree, std::span<const int> nodes) {
  if (nodes.empty()) throw Error("cannot build a pmf over no nodes");
  Pmf pmf;
  pmf.nodes.assign(nodes.begin(), nodes.end());
  pmf.probabilities.reserve(nodes.size());
  double total = 0.0;
  for (int id : nodes) {
    const double diag = tree.node(id).region.diagonal();
    if (!(diag > 0.0)) throw Error("node " + std::to_string(id) + " has a zero-diagonal region");
    pmf.probabilities.push_back(1.0 / diag);
    total += pmf.probabilities.back();
  }
  for (double& p : pmf.probabilities) p /= total;
  return pmf;
}

Pmf smooth_pmf(const Pmf& pmf, double lambda) {
  if (!(lambda >= 0.0)) throw Error("smoothing coefficient must be non-negative");
  if (lambda == 0.0) return pmf;
  Pmf out = pmf;
  const double add = lambda / static_cast<double>(pmf.size());
  double total = 0.0;
  for (double& p : out.probabilities) {
    p += add;
    total += p;
  }
  for (double& p : out.probabilities) p /= total;
  return out;
}

double normalized_entropy(std::span<const std::uint32_t> histogram) {
  const double total = std::accumulate(histogram.begin(), histogram.end(), 0.0);
  if (!(total > 0.0)) throw Error("entropy of an empty histogram");
  if (histogram.size() < 2) return 0.0;
  double h = 0.0;
  for (std::uint32_t c : histogram) {
    if (c == 0) continue;
    const double p = c / total;
    h -= p * std::log2(p);
  }
  return std::clamp(h / std::log2(static_cast<double>(histogram.size())), 0.0, 1.0);
}

double node_entropy(const TreeNode& node) { return normalized_entropy(node.histogram); }

int majority_label(std::span<const std::uint32_t> histogram) {
  if (histogram.empty()) throw Error("majority label of an empty histogram");
  auto it = std::max_element(histogram.begin(), histogram.end());
  if (*it == 0) throw Error("majority label of an empty node");
  return static_cast<int>(it - histogram.begin());
}

int majority_label(const TreeNode& node) { return majority_label(node.histogram); }

void sample_uniform_in_region(const Box& region, Rng& rng, std::span<double> out) {
  for (std::size_t j = 0; j < region.dim(); ++j) {
    const double lo = region.lo[j];
    const double hi = region.hi[j];
    out[j] = lo == hi ? lo : std::min(rng.uniform(lo, hi), hi);
  }
}

std::vector<double> sample_uniform_in_region(const Box& region, Rng& rng) {
  std::vector<double> out(region.dim());
  sample_uniform_in_region(region, rng, out);
  return out;
}

}  // namespace adasample
