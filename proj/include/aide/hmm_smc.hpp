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

#ifndef AIDE_HMM_SMC_HPP
#define AIDE_HMM_SMC_HPP

#include "aide/hmm.hpp"
#include "aide/smc.hpp"

namespace aide {

enum class HmmProposal { prior, optimal };

/// Particle filter for the HMM as an SMC spec over growing state-sequence
/// prefixes. Targets are the prefix joints p(x_{1:t}, y_{1:t}); forward
/// kernels extend a prefix by one state drawn from either the transition
/// prior or the locally optimal one-step conditional; backward kernels drop
/// the last state deterministically.
SmcSpec<StateSequence> hmm_smc_spec(const DiscreteHmm& model,
                                    const SymbolSequence& obs, int n_particles,
                                    HmmProposal proposal);

}  // namespace aide

#endif  // AIDE_HMM_SMC_HPP
