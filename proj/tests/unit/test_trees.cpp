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
#include <cmath>
#include <numeric>

#include "adasample/error.hpp"
#include "adasample/random.hpp"
#include "adasample/trees.hpp"
#include "doctest.h"
#include "../helpers.hpp"
#include "../oracle.hpp"

using namespace adasample;
using adasample::testing::make_dataset;

namespace {

TreeNode make_node(int depth, int parent, Box region, std::vector<std::uint32_t> histogram) {
  TreeNode n;
  n.depth = depth;
  n.parent = parent;
  n.region = std::move(region);
  n.histogram = std::move(histogram);
  return n;
}

void split_node(std::vector<TreeNode>& nodes, int id, int feature, double t, int left, int right) {
  TreeNode& n = nodes[static_cast<std::size_t>(id)];
  n.feature = feature;
  n.threshold = t;
  n.left = left;
  n.right = right;
}

// A -> (B, C); C -> (D, E); E -> (F, G), ids 0..6 in that order.
DensityTree fig_tree() {
  std::vector<TreeNode> nodes;
  Box a = Box::unit(2);
  Box b = a, c = a;
  b.hi[0] = c.lo[0] = 0.5;
  Box d = c, e = c;
  d.hi[1] = e.lo[1] = 0.5;
  Box f = e, g = e;
  f.hi[0] = g.lo[0] = 0.75;
  nodes.push_back(make_node(0, -1, a, {4, 4}));
  nodes.push_back(make_node(1, 0, b, {2, 0}));
  nodes.push_back(make_node(1, 0, c, {2, 4}));
  nodes.push_back(make_node(2, 2, d, {0, 2}));
  nodes.push_back(make_node(2, 2, e, {2, 2}));
  nodes.push_back(make_node(3, 4, f, {2, 0}));
  nodes.push_back(make_node(3, 4, g, {0, 2}));
  split_node(nodes, 0, 0, 0.5, 1, 2);
  split_node(nodes, 2, 1, 0.5, 3, 4);
  split_node(nodes, 4, 0, 0.75, 5, 6);
  return DensityTree(std::move(nodes), 2);
}

Dataset random_dataset(Rng& rng, std::size_t n, std::size_t d, int k, int grid) {
  Dataset data;
  data.features.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double u = rng.uniform();
      data.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          grid > 0 ? std::floor(u * grid) / grid : u;
    }
  data.class_count = k;
  for (int c = 0; c < k; ++c) data.raw_labels.push_back(c);
  for (std::size_t i = 0; i < n; ++i) data.labels.push_back(static_cast<int>(rng.index(static_cast<std::size_t>(k))));
  return data;
}

}  // namespace

TEST_CASE("fit_cart splits separable 1-d data once") {
  const Dataset d = make_dataset({{0.1}, {0.2}, {0.8}, {0.9}}, {0, 0, 1, 1}, 2);
  const DensityTree tree = fit_cart(d);
  REQUIRE(tree.nodes().size() == 3);
  CHECK(tree.root().feature == 0);
  CHECK(tree.root().threshold == doctest::Approx(0.5));
  CHECK(tree.max_depth() == 1);
  CHECK(tree.node(tree.root().left).histogram == std::vector<std::uint32_t>{2, 0});
  CHECK(tree.node(tree.root().right).histogram == std::vector<std::uint32_t>{0, 2});
  const auto want = adasample::testing::exhaustive_split(d, tree.root().members);
  CHECK(want.threshold == tree.root().threshold);
}

TEST_CASE("fit_cart on a single class returns the root") {
  const Dataset d = make_dataset({{0.1}, {0.5}, {0.9}}, {1, 1, 1}, 2);
  const DensityTree tree = fit_cart(d);
  CHECK(tree.nodes().size() == 1);
  CHECK(tree.max_depth() == 0);
  CHECK(tree.root().is_leaf());
}

TEST_CASE("fit_cart resolves 2-d XOR at depth 2") {
  const Dataset d = make_dataset({{0.2, 0.2}, {0.8, 0.8}, {0.2, 0.8}, {0.8, 0.2}}, {0, 0, 1, 1}, 2);
  const DensityTree tree = fit_cart(d);
  CHECK(tree.max_depth() == 2);
  CHECK(tree.leaf_count() == 4);
  for (const TreeNode& n : tree.nodes())
    if (n.is_leaf()) CHECK(n.count() == 1);
  CHECK(adasample::testing::count_split_mismatches(tree, d) == 0);
}

TEST_CASE("fit_cart rejects empty data and respects limits") {
  Dataset empty = make_dataset({{0.5}}, {0}, 2);
  empty.features.resize(0, 1);
  empty.labels.clear();
  CHECK_THROWS_AS(fit_cart(empty), Error);

  Rng rng(3);
  const Dataset d = random_dataset(rng, 120, 3, 2, 0);
  CartOptions capped;
  capped.max_depth = 2;
  CHECK(fit_cart(d, capped).max_depth() <= 2);
  CartOptions leafy;
  leafy.min_leaf = 7;
  for (const TreeNode& n : fit_cart(d, leafy).nodes()) CHECK(n.count() >= 7);
  CartOptions zero;
  zero.min_leaf = 0;
  CHECK_THROWS_AS(fit_cart(d, zero), Error);
}

TEST_CASE("fit_cart structure invariants hold on random data") {
  Rng rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const Dataset d = random_dataset(rng, 60 + rng.index(60), 1 + rng.index(4), 2 + static_cast<int>(rng.index(3)),
                                     rep % 2 ? 8 : 0);
    const DensityTree tree = fit_cart(d);
    std::vector<int> leaf_hits(d.size(), 0);
    for (const TreeNode& n : tree.nodes()) {
      CHECK(std::accumulate(n.histogram.begin(), n.histogram.end(), 0u) == n.count());
      if (n.is_leaf()) {
        for (auto m : n.members) ++leaf_hits[m];
        continue;
      }
      const TreeNode& l = tree.node(n.left);
      const TreeNode& r = tree.node(n.right);
      CHECK(l.count() + r.count() == n.count());
      CHECK(l.region.volume() + r.region.volume() == doctest::Approx(n.region.volume()).epsilon(1e-12));
    }
    CHECK(std::all_of(leaf_hits.begin(), leaf_hits.end(), [](int h) { return h == 1; }));
    CHECK(adasample::testing::count_split_mismatches(tree, d) == 0);
    for (std::size_t i = 0; i < d.size(); ++i) {
      std::vector<double> x(d.dim());
      for (std::size_t j = 0; j < d.dim(); ++j) x[j] = d.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      const TreeNode& leaf = tree.node(tree.leaf_for(x));
      CHECK(std::binary_search(leaf.members.begin(), leaf.members.end(), static_cast<std::uint32_t>(i)));
    }
  }
}

TEST_CASE("scheme_at_depth backs up to leaves") {
  const DensityTree tree = fig_tree();
  CHECK(scheme_at_depth(tree, 0) == std::vector<int>{0});
  CHECK(scheme_at_depth(tree, 1) == std::vector<int>{1, 2});
  CHECK(scheme_at_depth(tree, 2) == std::vector<int>{1, 3, 4});
  CHECK(scheme_at_depth(tree, 3) == std::vector<int>{1, 3, 5, 6});
  CHECK_THROWS_AS(scheme_at_depth(tree, 4), Error);
  CHECK_THROWS_AS(scheme_at_depth(tree, -1), Error);
  for (int l = 0; l <= 3; ++l) {
    const auto t = adasample::testing::tiling(tree, scheme_at_depth(tree, l));
    CHECK(t.volume == doctest::Approx(1.0));
    CHECK(t.overlap == 0.0);
  }
}

TEST_CASE("tree JSON round trip") {
  const DensityTree tree = fig_tree();
  const DensityTree back = DensityTree::from_json(tree.to_json());
  CHECK(back.to_json() == tree.to_json());
  CHECK(back.max_depth() == 3);
}

TEST_CASE("depth_index maps normalized depth") {
  CHECK(depth_index(0, 0.0) == 0);
  CHECK(depth_index(7, 0.0) == 0);
  CHECK(depth_index(3, 0.5) == 1);
  CHECK(depth_index(3, 1.0) == 3);
  CHECK(depth_index(fig_tree(), 0.999) == 2);
  CHECK_THROWS_AS(depth_index(3, -0.01), Error);
  CHECK_THROWS_AS(depth_index(3, 1.01), Error);
  int prev = 0;
  for (int i = 0; i <= 1000; ++i) {
    const int l = depth_index(9, i / 1000.0);
    CHECK(l >= prev);
    prev = l;
  }
  CHECK(prev == 9);
}

TEST_CASE("inverse-diagonal mass contrasts with volume mass") {
  const std::size_t d = 10;
  Box big = Box::unit(d);
  Box small = Box::unit(d);
  for (auto& h : big.hi) h = 0.8;
  for (auto& h : small.hi) h = 0.4;
  CHECK(inverse_diagonal_mass(small) / inverse_diagonal_mass(big) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(inverse_volume_mass(small) / inverse_volume_mass(big) == doctest::Approx(1024.0).epsilon(1e-9));
}

TEST_CASE("base_pmf follows inverse diagonals") {
  std::vector<TreeNode> nodes;
  Box root = Box::unit(1);
  Box l = root, r = root;
  l.hi[0] = r.lo[0] = 1.0 / 3.0;
  nodes.push_back(make_node(0, -1, root, {1, 1}));
  nodes.push_back(make_node(1, 0, l, {1, 0}));
  nodes.push_back(make_node(1, 0, r, {0, 1}));
  split_node(nodes, 0, 0, 1.0 / 3.0, 1, 2);
  const DensityTree tree(std::move(nodes), 2);
  const std::vector<int> scheme{1, 2};
  const Pmf pmf = base_pmf(tree, scheme);
  CHECK(pmf.probabilities[0] == doctest::Approx(2.0 / 3.0));
  CHECK(pmf.probabilities[1] == doctest::Approx(1.0 / 3.0));
  const std::vector<int> root_only{0};
  CHECK(base_pmf(tree, root_only).probabilities == std::vector<double>{1.0});
  CHECK(pmf.cumulative().back() == doctest::Approx(1.0));
}

TEST_CASE("degenerate regions get the width floor") {
  Box b = Box::unit(2);
  b.hi[0] = b.lo[0] = 0.3;
  b.hi[1] = b.lo[1] = 0.3;
  CHECK(std::isfinite(inverse_diagonal_mass(b)));
  CHECK(inverse_diagonal_mass(b) == doctest::Approx(1.0 / (std::sqrt(2.0) * kMinRegionWidth)));
}

TEST_CASE("smooth_pmf examples and properties") {
  Pmf p;
  p.nodes = {0, 1};
  p.probabilities = {0.8, 0.2};
  CHECK(smooth_pmf(p, 0.0).probabilities == p.probabilities);
  const Pmf one = smooth_pmf(p, 1.0);
  CHECK(one.probabilities[0] == doctest::Approx(0.65));
  CHECK(one.probabilities[1] == doctest::Approx(0.35));
  const Pmf flat = smooth_pmf(p, 1e6);
  CHECK(std::abs(flat.probabilities[0] - 0.5) < 1e-5);
  CHECK_THROWS_AS(smooth_pmf(p, -0.1), Error);

  Rng rng(5);
  Pmf q;
  double total = 0.0;
  for (int i = 0; i < 20; ++i) {
    q.nodes.push_back(i);
    q.probabilities.push_back(rng.uniform());
    total += q.probabilities.back();
  }
  for (auto& v : q.probabilities) v /= total;
  for (double lambda : {0.001, 0.3, 7.0}) {
    const Pmf s = smooth_pmf(q, lambda);
    CHECK(std::accumulate(s.probabilities.begin(), s.probabilities.end(), 0.0) == doctest::Approx(1.0));
    for (std::size_t i = 0; i < 20; ++i)
      for (std::size_t j = 0; j < 20; ++j)
        if (q.probabilities[i] >= q.probabilities[j]) CHECK(s.probabilities[i] >= s.probabilities[j]);
  }
}

TEST_CASE("normalized entropy") {
  CHECK(normalized_entropy(std::vector<std::uint32_t>{5, 5}) == doctest::Approx(1.0));
  CHECK(normalized_entropy(std::vector<std::uint32_t>{10, 0}) == 0.0);
  CHECK(normalized_entropy(std::vector<std::uint32_t>{2, 2, 2, 2}) == doctest::Approx(1.0));
  CHECK(normalized_entropy(std::vector<std::uint32_t>{0, 0, 9}) == 0.0);
  CHECK(normalized_entropy(std::vector<std::uint32_t>{3, 3, 3, 3, 3, 3, 3}) == doctest::Approx(1.0));
  CHECK(normalized_entropy(std::vector<std::uint32_t>{3, 1}) == doctest::Approx(0.8112781244591328));
  CHECK_THROWS_AS(normalized_entropy(std::vector<std::uint32_t>{0, 0}), Error);
}

TEST_CASE("majority label") {
  CHECK(majority_label(std::vector<std::uint32_t>{3, 1}) == 0);
  CHECK(majority_label(std::vector<std::uint32_t>{2, 2}) == 0);
  CHECK(majority_label(std::vector<std::uint32_t>{0, 0, 7}) == 2);
  CHECK(majority_label(std::vector<std::uint32_t>{1, 4, 4}) == 1);
  CHECK(majority_label(std::vector<std::uint32_t>{10, 40, 40}) == 1);
  CHECK_THROWS_AS(majority_label(std::vector<std::uint32_t>{0, 0}), Error);
}

TEST_CASE("uniform sampling inside a region") {
  Rng rng(21);
  const Box unit = Box::unit(2);
  double m0 = 0.0, m1 = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto p = sample_uniform_in_region(unit, rng);
    CHECK(unit.contains(p));
    m0 += p[0];
    m1 += p[1];
  }
  CHECK(std::abs(m0 / 10000 - 0.5) < 0.02);
  CHECK(std::abs(m1 / 10000 - 0.5) < 0.02);

  Box flat = Box::unit(2);
  flat.lo[1] = flat.hi[1] = 0.3;
  for (int i = 0; i < 100; ++i) CHECK(sample_uniform_in_region(flat, rng)[1] == 0.3);
}
