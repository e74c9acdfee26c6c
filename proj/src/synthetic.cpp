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

#include "adasample/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "adasample/error.hpp"
#include "adasample/random.hpp"

namespace adasample::synthetic {
namespace {

Dataset make_empty(std::size_t n, std::size_t dim, int classes) {
  Dataset data;
  data.features = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  data.labels.assign(n, 0);
  data.class_count = classes;
  for (int c = 0; c < classes; ++c) data.raw_labels.push_back(c);
  return data;
}

}  // namespace

Dataset concentric_rings(std::size_t n, double band_width, std::uint64_t seed, double label_noise) {
  if (!(band_width > 0.0)) throw Error("band width must be positive");
  Rng rng(seed);
  Dataset data = make_empty(n, 2, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform();
    const double y = rng.uniform();
    const double r = std::hypot(x - 0.5, y - 0.5);
    int label = static_cast<int>(std::floor(r / band_width)) % 2;
    if (label_noise > 0.0 && rng.uniform() < label_noise) label = 1 - label;
    const auto row = static_cast<Eigen::Index>(i);
    data.features(row, 0) = x;
    data.features(row, 1) = y;
    data.labels[i] = label;
  }
  return data;
}

Dataset axis_boundary(std::size_t n, double threshold, std::uint64_t seed) {
  Rng rng(seed);
  Dataset data = make_empty(n, 2, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    data.features(row, 0) = rng.uniform();
    data.features(row, 1) = rng.uniform();
    data.labels[i] = data.features(row, 0) <= threshold ? 0 : 1;
  }
  return data;
}

Dataset gaussian_blobs(std::size_t n, std::size_t dim, int classes, double spread, std::uint64_t seed) {
  Rng rng(seed);
  Dataset data = make_empty(n, dim, classes);
  std::vector<std::vector<double>> centres(static_cast<std::size_t>(classes), std::vector<double>(dim));
  for (auto& c : centres)
    for (auto& v : c) v = rng.uniform(0.2, 0.8);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % static_cast<std::size_t>(classes));
    const auto row = static_cast<Eigen::Index>(i);
    for (std::size_t j = 0; j < dim; ++j)
      data.features(row, static_cast<Eigen::Index>(j)) =
          std::clamp(rng.normal(centres[static_cast<std::size_t>(label)][j], spread), 0.0, 1.0);
    data.labels[i] = label;
  }
  return data;
}

Dataset from_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream in(spec);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  if (parts.size() < 2 || parts[0] != "synthetic") throw Error("not a synthetic dataset spec: " + spec);
  std::size_t n = 4000;
  std::uint64_t seed = 7;
  double shape = 0.0;
  try {
    if (parts.size() > 2) n = std::stoul(parts[2]);
    if (parts.size() > 3) seed = std::stoull(parts[3]);
    if (parts.size() > 4) shape = std::stod(parts[4]);
  } catch (const std::exception&) {
    throw Error("bad synthetic dataset spec: " + spec);
  }
  if (parts.size() > 5 || (parts.size() > 4 && !(shape > 0.0))) throw Error("bad synthetic dataset spec: " + spec);
  if (parts[1] == "rings") return concentric_rings(n, shape > 0.0 ? shape : 0.125, seed);
  if (parts[1] == "axis") return axis_boundary(n, shape > 0.0 ? shape : 0.5, seed);
  if (parts[1] == "blobs") return gaussian_blobs(n, 4, 3, shape > 0.0 ? shape : 0.15, seed);
  throw Error("unknown synthetic dataset '" + parts[1] + "'");
}

}  // namespace adasample::synthetic
