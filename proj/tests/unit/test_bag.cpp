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


#include <algorithm>
#include <set>

#include "adasample/bag.hpp"
#include "adasample/error.hpp"
#include "adasample/random.hpp"
#include "adasample/synthetic.hpp"
#include "doctest.h"

using namespace adasample;

namespace {

std::vector<double> constant_depths(std::size_t n, double r) { return std::vector<double>(n, r); }

std::vector<std::pair<int, double>> splits_of(const DensityTree& tree) {
  std::vector<std::pair<int, double>> out;
  for (const TreeNode& n : tree.nodes()) out.emplace_back(n.feature, n.threshold);
  return out;
}

}  // namespace

TEST_CASE("near-identity transforms") {
  Rng rng(1);
  const Transform one = near_identity_matrix(1, 0.2, rng);
  CHECK(one.forward(0, 0) == 1.0);
  CHECK(one.inverse(0, 0) == 1.0);

  const Transform t3 = near_identity_matrix(3, 0.2, rng);
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) {
      if (p == q) CHECK(t3.forward(p, q) == 1.0);
      else CHECK((t3.forward(p, q) >= 0.0 && t3.forward(p, q) <= 0.2));
    }
  for (int rep = 0; rep < 20; ++rep) {
    const Transform t = near_identity_matrix(10, 0.2, rng);
    const Eigen::MatrixXd residual = t.forward * t.inverse - Eigen::MatrixXd::Identity(10, 10);
    CHECK(residual.cwiseAbs().maxCoeff() < 1e-8);
    CHECK(t.inverse_residual() < 1e-8);
  }
  CHECK_THROWS_AS(near_identity_matrix(0, 0.2, rng), Error);
  CHECK_THROWS_AS(near_identity_matrix(2, 0.0, rng), Error);
  CHECK_THROWS_AS(near_identity_matrix(2, 1.0, rng), Error);
}

TEST_CASE("identity bag tree matches a direct fit") {
  const Dataset d = synthetic::concentric_rings(300, 0.2, 4);
  std::vector<Transform> ts{Transform::identity(2)};
  const Bag bag = build_bag(d, ts);
  REQUIRE(bag.size() == 1);
  CartOptions options;
  options.root_box = Box::bounding(d.features);
  const DensityTree direct = fit_cart(d, options);
  CHECK(splits_of(bag.members()[0].tree) == splits_of(direct));
  CHECK(bag.members()[0].transformed_features == d.features);
}

TEST_CASE("transforms deepen trees on an axis-parallel boundary") {
  const Dataset d = synthetic::axis_boundary(400, 0.5, 2);
  CHECK(fit_cart(d).max_depth() == 1);
  Rng rng(8);
  BagOptions options;
  options.size = 5;
  const Bag bag = build_bag(d, options, rng);
  REQUIRE(bag.size() == 5);
  std::set<std::vector<double>> distinct;
  for (const BagMember& m : bag.members()) {
    CHECK(m.tree.max_depth() > 1);
    distinct.insert(std::vector<double>(m.transform.forward.data(), m.transform.forward.data() + 4));
    for (Eigen::Index i = 0; i < 5; ++i)
      CHECK(m.transformed_features.row(i).transpose().isApprox(m.transform.forward * d.features.row(i).transpose()));
  }
  CHECK(distinct.size() == 5);
}

TEST_CASE("bag sampling branch selection") {
  const Dataset d = synthetic::concentric_rings(500, 0.2, 11);
  Rng rng(12);
  const Bag bag = build_bag(d, BagOptions{}, rng);
  const BagSampler sampler(bag, 0.5);
  std::vector<BagDraw> trace;

  SUBCASE("E = 1 emits node majorities") {
    Rng r(1);
    std::vector<double> depths(2000);
    for (auto& v : depths) v = r.uniform();
    const Dataset s = sampler.sample(depths, 1.0, r, &trace);
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(trace[i].synthetic);
      CHECK(s.labels[i] == bag.members()[trace[i].member].majority[static_cast<std::size_t>(trace[i].node)]);
    }
  }

  SUBCASE("E = 0 at the root returns training pairs") {
    Rng r(2);
    const Dataset s = sampler.sample(constant_depths(1000, 0.0), 0.0, r, &trace);
    for (std::size_t i = 0; i < s.size(); ++i) {
      REQUIRE(trace[i].source.has_value());
      const BagMember& m = bag.members()[trace[i].member];
      const auto src = static_cast<Eigen::Index>(*trace[i].source);
      CHECK(s.labels[i] == d.labels[*trace[i].source]);
      for (Eigen::Index j = 0; j < 2; ++j) CHECK(trace[i].transformed_point[static_cast<std::size_t>(j)] == m.transformed_features(src, j));
      CHECK((s.features.row(static_cast<Eigen::Index>(i)) - d.features.row(src)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  SUBCASE("every draw lies inside its node region") {
    Rng r(3);
    std::vector<double> depths(3000);
    for (auto& v : depths) v = r.uniform();
    const Dataset s = sampler.sample(depths, kDefaultEntropyThreshold, r, &trace);
    std::size_t outside = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const BagMember& m = bag.members()[trace[i].member];
      CHECK(m.tree.node(trace[i].node).region.contains(trace[i].transformed_point, 1e-12));
      CHECK(trace[i].level == depth_index(m.tree, depths[i]));
      CHECK((s.labels[i] >= 0 && s.labels[i] < 2));
      bool out = false;
      for (Eigen::Index j = 0; j < 2; ++j) {
        const double v = s.features(static_cast<Eigen::Index>(i), j);
        CHECK((v >= -0.4 && v <= 1.4));
        out = out || v < 0.0 || v > 1.0;
      }
      outside += out;
    }
    CHECK(static_cast<double>(outside) / static_cast<double>(s.size()) < 0.2);
  }
}

TEST_CASE("root-only scheme with an identity tree resamples the data") {
  const Dataset d = synthetic::concentric_rings(200, 0.2, 5);
  std::vector<Transform> ts{Transform::identity(2)};
  const Bag bag = build_bag(d, ts);
  const BagSampler sampler(bag, 0.0);
  CHECK(sampler.smoothed(0, 0).nodes == std::vector<int>{0});
  Rng r(4);
  const Dataset s = sampler.sample(constant_depths(500, 0.0), kDefaultEntropyThreshold, r);
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool found = false;
    for (std::size_t k = 0; k < d.size() && !found; ++k)
      found = s.features.row(static_cast<Eigen::Index>(i)) == d.features.row(static_cast<Eigen::Index>(k)) &&
              s.labels[i] == d.labels[k];
    CHECK(found);
  }
}

TEST_CASE("leaf-level scheme supports exactly the leaves") {
  const Dataset d = synthetic::concentric_rings(300, 0.2, 6);
  Rng rng(7);
  const Bag bag = build_bag(d, BagOptions{}, rng);
  const BagSampler sampler(bag, 0.0);
  for (std::size_t m = 0; m < bag.size(); ++m) {
    const DensityTree& tree = bag.members()[m].tree;
    const Pmf& pmf = sampler.smoothed(m, depth_index(tree, 1.0));
    CHECK(pmf.size() == tree.leaf_count());
    for (int id : pmf.nodes) CHECK(tree.node(id).is_leaf());
  }
}

TEST_CASE("sample_from_bag is deterministic and validates input") {
  const Dataset d = synthetic::gaussian_blobs(300, 3, 3, 0.15, 2);
  Rng rng(9);
  const Bag bag = build_bag(d, BagOptions{}, rng);
  DepthDistParams params;
  Rng a(5), b(5);
  const Dataset x = sample_from_bag(400, bag, params, 1.0, 0.15, a);
  const Dataset y = sample_from_bag(400, bag, params, 1.0, 0.15, b);
  CHECK(x.features == y.features);
  CHECK(x.labels == y.labels);
  CHECK(x.class_count == 3);
  CHECK_THROWS_AS(sample_from_bag(0, bag, params, 1.0, 0.15, a), Error);
  CHECK_THROWS_AS(BagSampler(bag, -1.0), Error);
  const BagSampler sampler(bag, 1.0);
  const std::vector<double> depths{0.5};
  CHECK_THROWS_AS(sampler.sample(depths, 1.5, a), Error);
  CHECK_THROWS_AS(Bag({}, {}, 2), Error);
}

TEST_CASE("bag JSON round trip") {
  const Dataset d = synthetic::concentric_rings(150, 0.2, 3);
  Rng rng(1);
  const Bag bag = build_bag(d, BagOptions{}, rng);
  const Bag back = Bag::from_json(bag.to_json());
  CHECK(back.to_json() == bag.to_json());
  CHECK(back.size() == bag.size());
}
