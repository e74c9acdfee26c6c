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
#include "adasample/optimizer.hpp"
#include "adasample/random.hpp"

namespace adasample {

double Variable::to_internal(double value) const {
  return scale == Scale::Log10 ? std::log10(value) : value;
}

double Variable::from_internal(double u) const {
  double v = scale == Scale::Log10 ? std::pow(10.0, u) : u;
  if (integer) v = std::round(v);
  return std::clamp(v, lower, upper);
}

void SearchSpace::validate() const {
  if (variables.empty()) throw Error("search space has no variables");
  for (const auto& v : variables) {
    if (!(v.lower < v.upper)) throw Error("variable '" + v.name + "' needs lower < upper");
    if (v.scale == Scale::Log10 && !(v.lower > 0.0)) throw Error("log-scaled variable '" + v.name + "' must be positive");
  }
}

bool SearchSpace::contains(std::span<const double> values) const {
  if (values.size() != variables.size()) return false;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!(values[i] >= variables[i].lower && values[i] <= variables[i].upper)) return false;
  return true;
}

std::vector<double> SearchSpace::clip(std::vector<double> values) const {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& v = variables[i];
    if (v.integer) values[i] = std::round(values[i]);
    values[i] = std::clamp(values[i], v.lower, v.upper);
  }
  return values;
}

std::string to_string(Strategy strategy) { return strategy == Strategy::TPE ? "tpe" : "random"; }

Strategy parse_strategy(const std::string& name) {
  if (name == "tpe") return Strategy::TPE;
  if (name == "random") return Strategy::Random;
  throw Error("unknown optimizer '" + name + "' (expected tpe or random)");
}

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double normal_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

// Parzen estimator over one internal coordinate: truncated Gaussians at the
// observations plus a uniform prior component, equally weighted. Each
// Gaussian's width is the larger gap to its sorted neighbours, with the
// interval ends acting as neighbours.
class Parzen {
 public:
  Parzen(std::vector<double> centres, double lo, double hi) : centres_(std::move(centres)), lo_(lo), hi_(hi) {
    const double range = hi - lo;
    const double floor = range / std::min(100.0, static_cast<double>(centres_.size()) + 1.0);
    std::vector<std::size_t> order(centres_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return centres_[a] < centres_[b]; });
    sigma_.assign(centres_.size(), range);
    for (std::size_t r = 0; r < order.size(); ++r) {
      const double c = centres_[order[r]];
      const double left = c - (r == 0 ? lo : centres_[order[r - 1]]);
      const double right = (r + 1 == order.size() ? hi : centres_[order[r + 1]]) - c;
      sigma_[order[r]] = std::clamp(std::max(left, right), floor, range);
    }
    for (std::size_t i = 0; i < centres_.size(); ++i)
      mass_.push_back(normal_cdf((hi - centres_[i]) / sigma_[i]) - normal_cdf((lo - centres_[i]) / sigma_[i]));
  }

  double draw(Rng& rng) const {
    const std::size_t pick = rng.index(centres_.size() + 1);
    if (pick == centres_.size()) return rng.uniform(lo_, hi_);
    const double c = centres_[pick];
    for (int attempt = 0; attempt < 64; ++attempt) {
      const double v = rng.normal(c, sigma_[pick]);
      if (v >= lo_ && v <= hi_) return v;
    }
    return std::clamp(c, lo_, hi_);
  }

  double log_density(double u) const {
    const double range = hi_ - lo_;
    double total = 1.0 / range;
    for (std::size_t i = 0; i < centres_.size(); ++i) {
      const double z = (u - centres_[i]) / sigma_[i];
      total += kInvSqrt2Pi / sigma_[i] * std::exp(-0.5 * z * z) / std::max(mass_[i], 1e-300);
    }
    return std::log(total / static_cast<double>(centres_.size() + 1));
  }

 private:
  std::vector<double> centres_;
  std::vector<double> mass_;
  double lo_;
  double hi_;
  std::vector<double> sigma_;
};

std::vector<double> uniform_point(const SearchSpace& space, Rng& rng) {
  std::vector<double> out;
  for (const auto& v : space.variables) out.push_back(v.from_internal(rng.uniform(v.internal_lower(), v.internal_upper())));
  return out;
}

}  // namespace

std::vector<double> suggest(const SearchSpace& space, std::span<const Trial> history, Strategy strategy,
                            const TpeConfig& config, Rng& rng) {
  space.validate();
  if (strategy == Strategy::Random || history.size() < std::max<std::size_t>(config.startup_trials, 2))
    return uniform_point(space, rng);

  std::vector<std::size_t> order(history.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return history[a].score > history[b].score; });
  const auto good_count = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(config.gamma * static_cast<double>(history.size()))), 1,
      history.size() - 1);

  std::vector<Parzen> good, bad;
  for (std::size_t v = 0; v < space.size(); ++v) {
    const auto& var = space.variables[v];
    const double lo = var.internal_lower();
    const double hi = var.internal_upper();
    std::vector<double> g, b;
    for (std::size_t r = 0; r < order.size(); ++r) {
      const double value = std::clamp(history[order[r]].values.at(v), var.lower, var.upper);
      (r < good_count ? g : b).push_back(var.to_internal(value));
    }
    good.emplace_back(std::move(g), lo, hi);
    bad.emplace_back(std::move(b), lo, hi);
  }

  std::vector<double> best_point;
  double best_score = -std::numeric_limits<double>::infinity();
  const std::size_t candidates = std::max<std::size_t>(config.candidates, 1);
  for (std::size_t c = 0; c < candidates; ++c) {
    std::vector<double> internal(space.size());
    double score = 0.0;
    for (std::size_t v = 0; v < space.size(); ++v) {
      internal[v] = good[v].draw(rng);
      score += good[v].log_density(internal[v]) - bad[v].log_density(internal[v]);
    }
    if (score > best_score) {
      best_score = score;
      best_point = internal;
    }
  }
  std::vector<double> out;
  for (std::size_t v = 0; v < space.size(); ++v) out.push_back(space.variables[v].from_internal(best_point[v]));
  return out;
}

std::vector<Trial> maximize(const SearchSpace& space, const std::function<double(std::span<const double>)>& objective,
                            std::size_t budget, Strategy strategy, const TpeConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Trial> history;
  for (std::size_t t = 1; t <= budget; ++t) {
    Trial trial;
    trial.index = t;
    trial.values = suggest(space, history, strategy, config, rng);
    trial.score = objective(trial.values);
    trial.repeat_scores = {trial.score};
    history.push_back(std::move(trial));
  }
  return history;
}

}  // namespace adasample
