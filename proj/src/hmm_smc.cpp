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

#include "aide/hmm_smc.hpp"

#include <cmath>

#include "aide/errors.hpp"
#include "aide/numeric.hpp"

namespace aide {

namespace {

bool extends_by_one(const StateSequence& child, const StateSequence& parent) {
  if (child.size() != parent.size() + 1) return false;
  for (std::size_t i = 0; i < parent.size(); ++i)
    if (child[i] != parent[i]) return false;
  return true;
}

std::vector<double> optimal_init_probs(const DiscreteHmm& model, int symbol) {
  std::vector<double> probs(model.n_states());
  double total = 0.0;
  for (int s = 0; s < model.n_states(); ++s) {
    probs[s] = model.initial_dist()[s] * model.emission()[s][symbol];
    total += probs[s];
  }
  if (total <= 0.0)
    throw InvalidStateError("hmm_smc_spec: first observation has zero "
                            "probability under every initial state");
  for (double& p : probs) p /= total;
  return probs;
}

std::vector<double> optimal_step_probs(const DiscreteHmm& model, int prev_state,
                                       int symbol) {
  std::vector<double> probs(model.n_states());
  double total = 0.0;
  for (int s = 0; s < model.n_states(); ++s) {
    probs[s] = model.transition()[prev_state][s] * model.emission()[s][symbol];
    total += probs[s];
  }
  if (total <= 0.0)
    throw InvalidStateError(
        "hmm_smc_spec: observation unreachable from the current state");
  for (double& p : probs) p /= total;
  return probs;
}

}  // namespace

SmcSpec<StateSequence> hmm_smc_spec(const DiscreteHmm& model,
                                    const SymbolSequence& obs, int n_particles,
                                    HmmProposal proposal) {
  if (obs.size() != static_cast<std::size_t>(model.n_steps()))
    throw std::invalid_argument("hmm_smc_spec: observation length != n_steps");
  SmcSpec<StateSequence> spec;
  spec.n_particles = n_particles;

  // Initialization kernel over length-1 prefixes.
  if (proposal == HmmProposal::prior) {
    spec.init.sample = [model](RandomStream& rng) {
      return StateSequence{rng.categorical(model.initial_dist())};
    };
    spec.init.log_density = [model](const StateSequence& x) {
      return x.size() == 1 ? model.log_initial(x[0]) : kNegInf;
    };
  } else {
    const std::vector<double> probs = optimal_init_probs(model, obs[0]);
    spec.init.sample = [probs](RandomStream& rng) {
      return StateSequence{rng.categorical(probs)};
    };
    spec.init.log_density = [probs](const StateSequence& x) {
      return x.size() == 1 ? std::log(probs[x[0]]) : kNegInf;
    };
  }
  spec.init_target.log_density = [model, obs](const StateSequence& x) {
    return model.log_prefix_joint(x, obs);
  };

  spec.steps.reserve(model.n_steps() - 1);
  for (int t = 1; t < model.n_steps(); ++t) {
    SmcStep<StateSequence> step;
    step.target.log_density = [model, obs](const StateSequence& x) {
      return model.log_prefix_joint(x, obs);
    };
    if (proposal == HmmProposal::prior) {
      step.forward.sample = [model](const StateSequence& parent,
                                    RandomStream& rng) {
        StateSequence child = parent;
        child.push_back(rng.categorical(model.transition()[parent.back()]));
        return child;
      };
      step.forward.log_density = [model](const StateSequence& child,
                                         const StateSequence& parent) {
        if (!extends_by_one(child, parent)) return kNegInf;
        return model.log_transition(parent.back(), child.back());
      };
    } else {
      const int symbol = obs[t];
      step.forward.sample = [model, symbol](const StateSequence& parent,
                                            RandomStream& rng) {
        StateSequence child = parent;
        child.push_back(
            rng.categorical(optimal_step_probs(model, parent.back(), symbol)));
        return child;
      };
      step.forward.log_density = [model, symbol](const StateSequence& child,
                                                 const StateSequence& parent) {
        if (!extends_by_one(child, parent)) return kNegInf;
        return std::log(
            optimal_step_probs(model, parent.back(), symbol)[child.back()]);
      };
    }
    // Backward kernel: drop the last state. Deterministic, density one on
    // the matching prefix.
    MarkovKernel<StateSequence> backward;
    backward.sample = [](const StateSequence& child, RandomStream&) {
      StateSequence parent = child;
      parent.pop_back();
      return parent;
    };
    backward.log_density = [](const StateSequence& parent,
                              const StateSequence& child) {
      return extends_by_one(child, parent) ? 0.0 : kNegInf;
    };
    step.backward = std::move(backward);
    spec.steps.push_back(std::move(step));
  }
  return spec;
}

}  // namespace aide
