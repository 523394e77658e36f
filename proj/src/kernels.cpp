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

#include "aide/kernels.hpp"

namespace aide {

MarkovKernel<double> gaussian_random_walk(double step_size) {
  if (!(step_size > 0.0))
    throw std::invalid_argument("gaussian_random_walk: step_size must be > 0");
  MarkovKernel<double> kernel;
  kernel.sample = [step_size](const double& x, RandomStream& rng) {
    return x + step_size * rng.normal();
  };
  return kernel;
}

}  // namespace aide
