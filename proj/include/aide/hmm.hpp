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

#ifndef AIDE_HMM_HPP
#define AIDE_HMM_HPP

#include <vector>

#include "aide/model.hpp"
#include "aide/random.hpp"

namespace aide {

using StateSequence = std::vector<int>;
using SymbolSequence = std::vector<int>;

/// Discrete hidden Markov model with a finite observation alphabet.
/// Immutable after construction; the constructor validates stochasticity
/// of every row to 1e-12.
class DiscreteHmm {
 public:
  DiscreteHmm(std::vector<double> initial_dist,
              std::vector<std::vector<double>> transition,
              std::vector<std::vector<double>> emission, int n_steps);

  int n_states() const { return n_states_; }
  int n_steps() const { return n_steps_; }
  int n_symbols() const { return n_symbols_; }

  const std::vector<double>& initial_dist() const { return initial_dist_; }
  const std::vector<std::vector<double>>& transition() const {
    return transition_;
  }
  const std::vector<std::vector<double>>& emission() const {
    return emission_;
  }

  double log_initial(int state) const { return log_initial_[state]; }
  double log_transition(int from, int to) const {
    return log_transition_[from][to];
  }
  double log_emission(int state, int symbol) const {
    return log_emission_[state][symbol];
  }

  /// log p(x, y) for a complete state sequence.
  double log_joint(const StateSequence& states, const SymbolSequence& obs) const;

  /// log p(x_{1:t}, y_{1:t}) for a prefix of length t = states.size().
  /// Used as the SMC target sequence.
  double log_prefix_joint(const StateSequence& states,
                          const SymbolSequence& obs) const;

  /// Simulates states and observations from the model.
  std::pair<StateSequence, SymbolSequence> simulate(RandomStream& rng) const;

  /// Throws std::invalid_argument on symbols outside the alphabet.
  void check_symbols(const SymbolSequence& obs) const;

 private:
  int n_states_;
  int n_steps_;
  int n_symbols_;
  std::vector<double> initial_dist_;
  std::vector<std::vector<double>> transition_;
  std::vector<std::vector<double>> emission_;
  std::vector<double> log_initial_;
  std::vector<std::vector<double>> log_transition_;
  std::vector<std::vector<double>> log_emission_;
};

/// Output of the forward pass: the evidence and the per-step filtering
/// distributions p(x_t | y_{1:t}).
struct HmmForwardResult {
  double log_marginal;
  std::vector<std::vector<double>> filtering;  // [t][state]
};

/// Forward filtering by dynamic programming.
HmmForwardResult hmm_forward(const DiscreteHmm& model, const SymbolSequence& obs);

/// One exact posterior draw by forward filtering / backward sampling,
/// together with the draw's log posterior density accumulated from the
/// backward categorical probabilities.
std::pair<StateSequence, double> hmm_posterior_sample(const DiscreteHmm& model,
                                                      const SymbolSequence& obs,
                                                      RandomStream& rng);

/// Resamples one site of the sequence from its exact full conditional
/// p(x_site | x_{-site}, y); other coordinates are unchanged.
StateSequence hmm_gibbs_step(const DiscreteHmm& model, const SymbolSequence& obs,
                             const StateSequence& states, int site,
                             RandomStream& rng);

/// The posed inference problem for this model: joint density over complete
/// sequences, exact evidence, exact posterior sampler.
Model<StateSequence> make_hmm_model(const DiscreteHmm& model,
                                    const SymbolSequence& obs);

}  // namespace aide

#endif  // AIDE_HMM_HPP
