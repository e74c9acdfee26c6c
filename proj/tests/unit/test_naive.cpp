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
#include <string>

#include "adasample/error.hpp"
#include "adasample/naive.hpp"
#include "adasample/random.hpp"
#include "adasample/synthetic.hpp"
#include "doctest.h"

using namespace adasample;

namespace {

double oracle_log_beta_pdf(double x, double a, double b) {
  x = std::clamp(x, 1e-9, 1.0 - 1e-9);
  return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + (a - 1) * std::log(x) + (b - 1) * std::log1p(-x);
}

}  // namespace

TEST_CASE("full IBMM parameters") {
  FullIbmmParams p;
  p.alpha = 2.0;
  p.priors = {{1, 2, 3, 4}, {5, 6, 7, 8}};
  const auto v = p.to_values();
  CHECK(v == std::vector<double>{2, 1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(FullIbmmParams::from_values(v).to_values() == v);
  CHECK_THROWS_AS(FullIbmmParams::from_values(std::vector<double>{1, 2, 3}), Error);
  p.priors[1][2] = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);

  const SearchSpace s = full_ibmm_search_space(3);
  CHECK(s.size() == 13);
  CHECK(s.variables[0].name == "alpha");
  CHECK(s.variables[1].name == "a_1");
  CHECK(s.variables[12].name == "b_prime_3");
  CHECK_THROWS_AS(full_ibmm_search_space(0), Error);
}

TEST_CASE("product Beta densities") {
  Rng rng(1);
  Eigen::MatrixXd x(50, 2);
  for (Eigen::Index i = 0; i < 50; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) x(i, j) = rng.uniform();
  x(0, 0) = 0.0;
  x(1, 1) = 1.0;
  const std::vector<double> ones{1.0, 1.0};
  for (double v : beta_product_log_density(x, ones, ones)) CHECK(v == doctest::Approx(0.0));

  const std::vector<double> a{0.3, 2.5}, b{0.7, 0.4};
  const auto got = beta_product_log_density(x, a, b);
  for (Eigen::Index i = 0; i < 50; ++i) {
    const double want = oracle_log_beta_pdf(x(i, 0), a[0], b[0]) + oracle_log_beta_pdf(x(i, 1), a[1], b[1]);
    CHECK(std::isfinite(got[static_cast<std::size_t>(i)]));
    CHECK(got[static_cast<std::size_t>(i)] == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("IBMM draws follow the component density") {
  const Dataset d = synthetic::gaussian_blobs(40, 2, 2, 0.2, 3);
  FullIbmmParams p;
  p.alpha = 1e-9;
  p.priors = {{2, 2, 2, 2}, {2, 2, 2, 2}};
  Rng rng(4);
  std::vector<ComponentShapes> comps;
  std::vector<std::size_t> sources;
  const std::size_t n = 20000;
  const Dataset s = ibmm_weights(d, p, n, rng, &comps, &sources);
  REQUIRE(comps.size() == 1);
  REQUIRE(sources.size() == n);
  for (std::size_t i = 0; i < n; ++i) CHECK(s.labels[i] == d.labels[sources[i]]);

  std::vector<double> logw(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (Eigen::Index j = 0; j < 2; ++j)
      logw[i] += oracle_log_beta_pdf(d.features(static_cast<Eigen::Index>(i), j), comps[0].a[static_cast<std::size_t>(j)],
                                     comps[0].b[static_cast<std::size_t>(j)]);
  const auto top = static_cast<std::size_t>(std::max_element(logw.begin(), logw.end()) - logw.begin());
  double total = 0.0;
  for (double w : logw) total += std::exp(w - logw[top]);
  const double share = 1.0 / total;
  std::vector<std::size_t> freq(d.size(), 0);
  for (auto src : sources) ++freq[src];
  CHECK(static_cast<std::size_t>(std::max_element(freq.begin(), freq.end()) - freq.begin()) == top);
  const double se = std::sqrt(share * (1 - share) / static_cast<double>(n));
  CHECK(std::abs(static_cast<double>(freq[top]) / static_cast<double>(n) - share) < 4 * se);
}

TEST_CASE("IBMM draws are copies of training rows") {
  const Dataset d = synthetic::concentric_rings(100, 0.2, 2);
  FullIbmmParams p;
  p.alpha = 3.0;
  p.priors = {{0.5, 0.5, 0.5, 0.5}, {1, 1, 1, 1}};
  Rng rng(5);
  std::vector<std::size_t> sources;
  const Dataset s = ibmm_weights(d, p, 500, rng, nullptr, &sources);
  for (std::size_t i = 0; i < s.size(); ++i)
    CHECK(s.features.row(static_cast<Eigen::Index>(i)) == d.features.row(static_cast<Eigen::Index>(sources[i])));
  p.priors.pop_back();
  CHECK_THROWS_AS(ibmm_weights(d, p, 10, rng), Error);
}

TEST_CASE("naive search") {
  const Splits splits = prepare_splits(synthetic::concentric_rings(500, 0.2, 1), SplitFractions{}, 2);
  const LearnerSpec learner{Family::DT, 5};
  NaiveConfig config;
  config.repeats = 2;

  config.budget = 1;
  const NaiveResult one = naive_search(learner, splits, config, 3);
  CHECK(one.trials.size() == 1);
  CHECK(one.trials[0].pinned);
  CHECK(one.best_trial == 0);

  config.budget = 25;
  const NaiveResult r = naive_search(learner, splits, config, 3);
  CHECK(r.trials.size() == 25);
  CHECK(r.trials[0].pinned);
  CHECK(r.best_validation >= r.trials[0].score);
  CHECK(r.best.dim() == 2);
  CHECK(trial_log(naive_search(learner, splits, config, 3)) == trial_log(r));
  const std::string log = trial_log(r);
  CHECK(log.find("\"b_prime_2\"") != std::string::npos);

  const Splits wide = prepare_splits(synthetic::gaussian_blobs(300, 5, 2, 0.2, 1), SplitFractions{}, 2);
  CHECK_THROWS_WITH_AS(naive_search(learner, wide, config, 1), doctest::Contains("density"), Error);
}
