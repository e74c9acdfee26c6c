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

#ifndef ADASAMPLE_KDE_HPP_
#define ADASAMPLE_KDE_HPP_

#include <span>
#include <utility>
#include <vector>

namespace adasample {

// Silverman's rule of thumb, 0.9 * min(sd, IQR / 1.34) * n^(-1/5).
double silverman_bandwidth(std::span<const double> values);

// Gaussian kernel density estimate of 1-d data.
class GaussianKde {
 public:
  explicit GaussianKde(std::vector<double> values);
  GaussianKde(std::vector<double> values, double bandwidth);

  double bandwidth() const { return bandwidth_; }
  double operator()(double x) const;
  // (x, density) pairs on `points` evenly spaced values spanning [lo, hi].
  std::vector<std::pair<double, double>> evaluate_grid(double lo, double hi, std::size_t points) const;

 private:
  std::vector<double> values_;
  double bandwidth_;
};

double trapezoid(std::span<const std::pair<double, double>> curve);

}  // namespace adasample

#endif  // ADASAMPLE_KDE_HPP_
