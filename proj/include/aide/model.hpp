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

#ifndef AIDE_MODEL_HPP
#define AIDE_MODEL_HPP

#include <functional>
#include <optional>

#include "aide/kernels.hpp"

namespace aide {

/// A posed inference problem: a generative model with its observations
/// bound, seen through the joint density p(x, y) as a function of x.
///
/// `exact_log_marginal` and `exact_posterior` are present only for models
/// where posterior computations are tractable; they back gold-standard
/// samplers and the test oracles.
template <typename X>
struct Model {
  std::function<double(const X&)> log_joint;
  std::optional<double> exact_log_marginal;
  std::optional<Distribution<X>> exact_posterior;

  UnnormalizedTarget<X> joint_target() const {
    return UnnormalizedTarget<X>{log_joint};
  }
};

}  // namespace aide

#endif  // AIDE_MODEL_HPP
