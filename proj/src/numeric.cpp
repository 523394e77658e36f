// Copyright 2026 The aide-cpp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aide/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aide {

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("log_sum_exp: empty input");
  const double m = *std::max_element(values.begin(), values.end());
  if (m == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double v : values) acc += std::exp(v - m);
  return m + std::log(acc);
}

double log_mean_exp(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("log_mean_exp: empty input");
  const double m = *std::max_element(values.begin(), values.end());
  if (m == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double v : values) acc += std::exp(v - m);
  // Dividing inside the log keeps constant inputs exact: the mean of n
  // equal xi values is that value, bit for bit.
  return m + std::log(acc / static_cast<double>(values.size()));
}

std::vector<double> normalized_probs(std::span<const double> log_weights) {
  const double lse = log_sum_exp(log_weights);
  std::vector<double> probs(log_weights.size(), 0.0);
  if (lse == kNegInf) return probs;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    probs[i] = log_weights[i] == kNegInf ? 0.0 : std::exp(log_weights[i] - lse);
  }
  return probs;
}

double mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean: empty input");
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double m = mean(values);
  double acc = 0.0;
  for (double v : values) acc += (v - m) * (v - m);
  return acc / static_cast<double>(n - 1);
}

double standard_error(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::sqrt(sample_variance(values) /
                   static_cast<double>(values.size()));
}

}  // namespace aide
