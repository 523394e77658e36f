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

#include "aide/bimodal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "aide/numeric.hpp"

namespace aide {

namespace {

double gaussian_log_pdf(double x, double mean, double std_dev) {
  const double z = (x - mean) / std_dev;
  return -0.5 * z * z - std::log(std_dev) -
         0.5 * std::log(2.0 * std::numbers::pi);
}

}  // namespace

void BimodalTarget::validate() const {
  for (double s : component_stds)
    if (!(s > 0.0))
      throw std::invalid_argument("BimodalTarget: stds must be > 0");
  for (double w : component_weights)
    if (!(w > 0.0))
      throw std::invalid_argument("BimodalTarget: weights must be > 0");
  if (std::abs(component_weights[0] + component_weights[1] - 1.0) > 1e-12)
    throw std::invalid_argument("BimodalTarget: weights must sum to 1");
}

double BimodalTarget::log_density(double x) const {
  const double terms[2] = {
      std::log(component_weights[0]) +
          gaussian_log_pdf(x, component_means[0], component_stds[0]),
      std::log(component_weights[1]) +
          gaussian_log_pdf(x, component_means[1], component_stds[1])};
  return log_sum_exp(terms);
}

double BimodalTarget::sample(RandomStream& rng) const {
  const int c = rng.categorical(component_weights);
  return component_means[c] + component_stds[c] * rng.normal();
}

Model<double> make_bimodal_model(const BimodalTarget& target) {
  target.validate();
  Model<double> posed;
  posed.log_joint = [target](const double& x) { return target.log_density(x); };
  posed.exact_log_marginal = 0.0;
  Distribution<double> posterior;
  posterior.sample = [target](RandomStream& rng) { return target.sample(rng); };
  posterior.log_density = [target](const double& x) {
    return target.log_density(x);
  };
  posed.exact_posterior = std::move(posterior);
  return posed;
}

Distribution<double> gaussian_proposal(double mean, double std_dev) {
  if (!(std_dev > 0.0))
    throw std::invalid_argument("gaussian_proposal: std_dev must be > 0");
  Distribution<double> dist;
  dist.sample = [mean, std_dev](RandomStream& rng) {
    return mean + std_dev * rng.normal();
  };
  dist.log_density = [mean, std_dev](const double& x) {
    return gaussian_log_pdf(x, mean, std_dev);
  };
  return dist;
}

}  // namespace aide
