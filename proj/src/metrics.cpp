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

#include "adasample/error.hpp"
#include "adasample/learners.hpp"

namespace adasample {

double macro_f1(std::span<const int> truth, std::span<const int> predicted, int class_count) {
  if (truth.size() != predicted.size()) throw Error("label and prediction lengths differ");
  if (truth.empty()) throw Error("macro F1 of an empty dataset");
  const auto k = static_cast<std::size_t>(class_count);
  std::vector<std::size_t> tp(k, 0), fp(k, 0), fn(k, 0);
  std::vector<bool> present(k, false);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const auto t = static_cast<std::size_t>(truth[i]);
    const auto p = static_cast<std::size_t>(predicted[i]);
    present[t] = present[p] = true;
    if (t == p) {
      ++tp[t];
    } else {
      ++fp[p];
      ++fn[t];
    }
  }
  double sum = 0.0;
  std::size_t classes = 0;
  for (std::size_t c = 0; c < k; ++c) {
    if (!present[c]) continue;
    ++classes;
    const double precision = tp[c] + fp[c] == 0 ? 0.0 : static_cast<double>(tp[c]) / static_cast<double>(tp[c] + fp[c]);
    const double recall = tp[c] + fn[c] == 0 ? 0.0 : static_cast<double>(tp[c]) / static_cast<double>(tp[c] + fn[c]);
    if (precision + recall > 0.0) sum += 2.0 * precision * recall / (precision + recall);
  }
  return sum / static_cast<double>(classes);
}

double macro_f1(const SizedModel& model, const Dataset& data) {
  const auto predicted = model.predict(data.features);
  return macro_f1(data.labels, predicted, std::max(data.class_count, model.class_count()));
}

double delta_f1(double f1_new, double f1_baseline) {
  if (!(f1_baseline > 0.0)) throw Error("relative improvement needs a positive baseline");
  return 100.0 * (f1_new - f1_baseline) / f1_baseline;
}

double floored_delta_f1(double f1_new, double f1_baseline) {
  return std::max(0.0, delta_f1(f1_new, f1_baseline));
}

}  // namespace adasample
