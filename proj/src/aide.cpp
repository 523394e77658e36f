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

#include "aide/aide.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace aide {

void AideConfig::validate() const {
  if (n_gold < 1 || n_target < 1 || m_gold < 1 || m_target < 1)
    throw std::invalid_argument("AideConfig: all counts must be >= 1");
}

bool AideEstimate::is_finite() const {
  return std::isfinite(estimate) && infinite_gold_runs.empty() &&
         infinite_target_runs.empty();
}

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string AideEstimate::csv_header() const {
  return "estimate,std_error,n_gold,n_target,m_gold,m_target,seed";
}

std::string AideEstimate::csv_row() const {
  return format_value(estimate) + "," + format_value(std_error) + "," +
         std::to_string(config.n_gold) + "," + std::to_string(config.n_target) +
         "," + std::to_string(config.m_gold) + "," +
         std::to_string(config.m_target) + "," +
         std::to_string(config.master_seed);
}

namespace detail {

void finalize_estimate(AideEstimate& est) {
  for (std::size_t n = 0; n < est.gold_terms.size(); ++n) {
    if (std::isinf(est.gold_terms[n]))
      est.infinite_gold_runs.push_back(static_cast<int>(n));
  }
  for (std::size_t n = 0; n < est.target_terms.size(); ++n) {
    if (std::isinf(est.target_terms[n]))
      est.infinite_target_runs.push_back(static_cast<int>(n));
  }
  est.estimate = mean(est.gold_terms) + mean(est.target_terms);
  if (est.infinite_gold_runs.empty() && est.infinite_target_runs.empty()) {
    est.std_error =
        std::sqrt(sample_variance(est.gold_terms) /
                      static_cast<double>(est.gold_terms.size()) +
                  sample_variance(est.target_terms) /
                      static_cast<double>(est.target_terms.size()));
  } else {
    est.std_error = kPosInf;
  }
}

}  // namespace detail

}  // namespace aide
