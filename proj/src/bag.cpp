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

#include "adasample/bag.hpp"

#include <algorithm>
#include <cmath>

#include "adasample/error.hpp"
#include "adasample/random.hpp"

namespace adasample {

Transform Transform::identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return Transform{Eigen::MatrixXd::Identity(d, d), Eigen::MatrixXd::Identity(d, d)};
}

double Transform::inverse_residual() const {
  const Eigen::MatrixXd residual = forward * inverse - Eigen::MatrixXd::Identity(forward.rows(), forward.cols());
  return residual.cwiseAbs().maxCoeff();
}

Transform near_identity_matrix(std::size_t dim, double epsilon, Rng& rng) {
  if (dim < 1) throw Error("transform dimension must be at least 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("epsilon must lie in (0, 1)");
  const auto d = static_cast<Eigen::Index>(dim);
  for (int attempt = 0; attempt < 5; ++attempt) {
    Transform t;
    t.forward = Eigen::MatrixXd::Identity(d, d);
    for (Eigen::Index p = 0; p < d; ++p)
      for (Eigen::Index q = 0; q < d; ++q)
        if (p != q) t.forward(p, q) = rng.uniform(0.0, epsilon);
    t.inverse = t.forward.partialPivLu().inverse();
    if (t.inverse.allFinite() && t.inverse_residual() < 1e-8) return t;
  }
  throw Error("near-identity draw was numerically singular 5 times");
}

Bag::Bag(std::vector<BagMember> members, std::vector<int> labels, int class_count,
         std::vector<double> raw_labels)
    : members_(std::move(members)), labels_(std::move(labels)), class_count_(class_count),
      raw_labels_(std::move(raw_labels)) {
  if (members_.empty()) throw Error("bag must contain at least one tree");
}

std::size_t Bag::dim() const { return members_.empty() ? 0 : members_.front().transform.dim(); }

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) row[static_cast<std::size_t>(j)] = m(i, j);
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.at(0).size());
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j)
      m(i, j) = rows.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)).get<double>();
  return m;
}

}  // namespace

nlohmann::json Bag::to_json() const {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& m : members_) {
    trees.push_back({{"transform", matrix_to_json(m.transform.forward)},
                     {"inverse", matrix_to_json(m.transform.inverse)},
                     {"tree", m.tree.to_json()},
                     {"transformed_features", matrix_to_json(m.transformed_features)}});
  }
  return {{"class_count", class_count_}, {"labels", labels_}, {"raw_labels", raw_labels_},
          {"members", std::move(trees)}};
}

Bag Bag::from_json(const nlohmann::json& doc) {
  std::vector<BagMember> members;
  for (const auto& j : doc.at("members")) {
    Transform t{matrix_from_json(j.at("transform")), matrix_from_json(j.at("inverse"))};
    members.push_back(make_bag_member(DensityTree::from_json(j.at("tree")), std::move(t),
                                      matrix_from_json(j.at("transformed_features"))));
  }
  return Bag(std::move(members), doc.at("labels").get<std::vector<int>>(), doc.at("class_count").get<int>(),
             doc.value("raw_labels", std::vector<double>{}));
}

BagMember make_bag_member(DensityTree tree, Transform transform, Eigen::MatrixXd transformed) {
  BagMember m{std::move(tree), std::move(transform), std::move(transformed), {}, {}, {}, {}};
  for (int level = 0; level <= m.tree.max_depth(); ++level) {
    m.schemes.push_back(scheme_at_depth(m.tree, level));
    m.base_pmfs.push_back(base_pmf(m.tree, m.schemes.back()));
  }
  m.entropy.reserve(m.tree.nodes().size());
  m.majority.reserve(m.tree.nodes().size());
  for (const auto& node : m.tree.nodes()) {
    m.entropy.push_back(node_entropy(node));
    m.majority.push_back(majority_label(node));
  }
  return m;
}

Bag build_bag(const Dataset& train, std::vector<Transform> transforms, std::size_t min_leaf) {
  if (train.empty()) throw Error("cannot build a bag on an empty dataset");
  std::vector<BagMember> members;
  members.reserve(transforms.size());
  for (auto& t : transforms) {
    if (t.dim() != train.dim()) throw Error("transform dimension differs from data");
    Dataset shifted = train;
    shifted.features = train.features * t.forward.transpose();
    CartOptions options;
    options.min_leaf = min_leaf;
    options.root_box = Box::bounding(shifted.features);
    options.keep_members = true;
    DensityTree tree = fit_cart(shifted, options);
    members.push_back(make_bag_member(std::move(tree), std::move(t), std::move(shifted.features)));
  }
  return Bag(std::move(members), train.labels, train.class_count, train.raw_labels);
}

Bag build_bag(const Dataset& train, const BagOptions& options, Rng& rng) {
  if (options.size < 1) throw Error("bag size must be at least 1");
  std::vector<Transform> transforms;
  for (std::size_t i = 0; i < options.size; ++i)
    transforms.push_back(near_identity_matrix(train.dim(), options.epsilon, rng));
  return build_bag(train, std::move(transforms), options.min_leaf);
}

BagSampler::BagSampler(const Bag& bag, double lambda) : bag_(&bag), lambda_(lambda) {
  if (bag.size() == 0) throw Error("cannot sample from an empty bag");
  if (!(lambda >= 0.0)) throw Error("smoothing coefficient must be non-negative");
  smoothed_.resize(bag.size());
  cdfs_.resize(bag.size());
  for (std::size_t m = 0; m < bag.size(); ++m) {
    for (const Pmf& pmf : bag.members()[m].base_pmfs) {
      smoothed_[m].push_back(smooth_pmf(pmf, lambda));
      cdfs_[m].push_back(smoothed_[m].back().cumulative());
    }
  }
}

const Pmf& BagSampler::smoothed(std::size_t member, int level) const {
  return smoothed_.at(member).at(static_cast<std::size_t>(level));
}

Dataset BagSampler::sample(std::span<const double> depth_values, double entropy_threshold, Rng& rng,
                           std::vector<BagDraw>* trace) const {
  if (!(entropy_threshold >= 0.0 && entropy_threshold <= 1.0))
    throw Error("entropy threshold must lie in [0, 1]");
  const Bag& bag = *bag_;
  const std::size_t n = depth_values.size();
  const auto d = static_cast<Eigen::Index>(bag.dim());
  Dataset out;
  out.features.resize(static_cast<Eigen::Index>(n), d);
  out.labels.resize(n);
  out.class_count = bag.class_count();
  out.raw_labels = bag.raw_labels();
  if (trace) trace->clear();

  Eigen::VectorXd point(d);
  std::vector<double> buffer(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = rng.index(bag.size());
    const BagMember& member = bag.members()[m];
    const int level = depth_index(member.tree, depth_values[i]);
    const auto& cdf = cdfs_[m][static_cast<std::size_t>(level)];
    const int node_id = smoothed_[m][static_cast<std::size_t>(level)].nodes[rng.from_cdf(cdf)];
    const TreeNode& node = member.tree.node(node_id);

    BagDraw draw;
    int label;
    if (member.entropy[static_cast<std::size_t>(node_id)] <= entropy_threshold) {
      sample_uniform_in_region(node.region, rng, buffer);
      label = member.majority[static_cast<std::size_t>(node_id)];
      draw.synthetic = true;
    } else {
      if (node.members.empty()) throw Error("bag tree was fitted without node memberships");
      const std::size_t src = node.members[rng.index(node.members.size())];
      for (Eigen::Index j = 0; j < d; ++j)
        buffer[static_cast<std::size_t>(j)] = member.transformed_features(static_cast<Eigen::Index>(src), j);
      label = bag.labels()[src];
      draw.source = src;
    }
    for (Eigen::Index j = 0; j < d; ++j) point(j) = buffer[static_cast<std::size_t>(j)];
    out.features.row(static_cast<Eigen::Index>(i)) = (member.transform.inverse * point).transpose();
    out.labels[i] = label;
    if (trace) {
      draw.member = m;
      draw.node = node_id;
      draw.level = level;
      draw.transformed_point = buffer;
      trace->push_back(std::move(draw));
    }
  }
  return out;
}

Dataset sample_from_bag(std::size_t n, const Bag& bag, const DepthDistParams& depth, double lambda,
                        double entropy_threshold, Rng& rng) {
  if (n < 1) throw Error("sample size must be at least 1");
  const auto depths = sample_depth_values(n, depth, rng);
  return BagSampler(bag, lambda).sample(depths, entropy_threshold, rng);
}

}  // namespace adasample
