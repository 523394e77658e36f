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

#ifndef AIDE_NUMERIC_HPP
#define AIDE_NUMERIC_HPP

#include <limits>
#include <span>
#include <vector>

namespace aide {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// log(sum_i exp(v_i)) with max-shift. All-(-inf) input returns -inf.
double log_sum_exp(std::span<const double> values);

/// log((1/n) sum_i exp(v_i)). Throws std::invalid_argument on empty input.
double log_mean_exp(std::span<const double> values);

/// Normalizes log weights into a probability vector (exp of shifted values).
/// -inf entries map to probability exactly 0. Throws DegenerateWeightsError
/// callers' concern; here all-(-inf) yields an all-zero vector.
std::vector<double> normalized_probs(std::span<const double> log_weights);

double mean(std::span<const double> values);

/// Unbiased sample variance; returns 0 for fewer than two values.
double sample_variance(std::span<const double> values);

/// Standard error of the mean: sqrt(sample_variance / n).
double standard_error(std::span<const double> values);

}  // namespace aide

#endif  // AIDE_NUMERIC_HPP
