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
#include <vector>

#include "adasample/random.hpp"
#include "doctest.h"

using adasample::Rng;

TEST_CASE("rng streams are reproducible") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CHECK(adasample::derive_seed(1, 2, 3) == adasample::derive_seed(1, 2, 3));
  CHECK(adasample::derive_seed(1, 2, 3) != adasample::derive_seed(1, 3, 2));
  CHECK(adasample::derive_seed(1, 2) != adasample::derive_seed(2, 2));
}

TEST_CASE("uniform draws stay in range") {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double o = rng.uniform_open();
    CHECK(o > 0.0);
    CHECK(o < 1.0);
    CHECK(rng.index(7) < 7u);
  }
  CHECK_THROWS(rng.index(0));
}

TEST_CASE("beta mean matches A / (A + B)") {
  Rng rng(7);
  const std::vector<std::pair<double, double>> shapes{{0.3, 0.7}, {2.0, 5.0}, {0.05, 0.05}, {0.5, 0.5}, {4.0, 1.0}};
  for (auto [a, b] : shapes) {
    const int n = 40000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = rng.beta(a, b);
      REQUIRE(x > 0.0);
      REQUIRE(x < 1.0);
      sum += x;
    }
    const double mean = a / (a + b);
    const double var = a * b / ((a + b) * (a + b) * (a + b + 1.0));
    CHECK(std::abs(sum / n - mean) < 3.0 * std::sqrt(var / n) + 1e-12);
  }
}

TEST_CASE("gamma with shape below one has the right mean") {
  Rng rng(11);
  for (double shape : {0.1, 0.5, 1.0, 3.5}) {
    const int n = 40000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rng.gamma(shape);
    CHECK(std::abs(sum / n - shape) < 3.0 * std::sqrt(shape / n));
  }
  CHECK_THROWS(rng.gamma(0.0));
}

TEST_CASE("normal draws have unit variance") {
  Rng rng(3);
  const int n = 50000;
  double s = 0.0, ss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s += z;
    ss += z * z;
  }
  CHECK(std::abs(s / n) < 0.02);
  CHECK(std::abs(ss / n - 1.0) < 0.03);
}

TEST_CASE("from_cdf follows the table") {
  Rng rng(5);
  const std::vector<double> cdf{0.25, 0.25, 1.0};
  std::vector<int> counts(3, 0);
  for (int i = 0; i < 20000; ++i) ++counts[rng.from_cdf(cdf)];
  CHECK(counts[1] == 0);
  CHECK(std::abs(counts[0] / 20000.0 - 0.25) < 0.02);
}
