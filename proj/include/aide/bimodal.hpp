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

#ifndef AIDE_BIMODAL_HPP
#define AIDE_BIMODAL_HPP

#include <array>

#include "aide/model.hpp"
#include "aide/random.hpp"

namespace aide {

/// A 1D posterior made of two Gaussian components. The mixture density is
/// normalized, so the posed problem has evidence exactly 1 (log p(y) = 0)
/// and the joint density coincides with the posterior density.
struct BimodalTarget {
  std::array<double, 2> component_means{-2.0, 2.0};
  std::array<double, 2> component_stds{0.5, 0.5};
  std::array<double, 2> component_weights{0.5, 0.5};

  void validate() const;

  double log_density(double x) const;
  double sample(RandomStream& rng) const;  // one component draw + one normal
};

/// Posed problem over X = double with evidence 1.
Model<double> make_bimodal_model(const BimodalTarget& target);

/// Normalized Gaussian proposal over doubles.
Distribution<double> gaussian_proposal(double mean, double std_dev);

}  // namespace aide

#endif  // AIDE_BIMODAL_HPP
