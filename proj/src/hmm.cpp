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

#include "aide/hmm.hpp"

#include <cmath>
#include <stdexcept>

#include "aide/numeric.hpp"

namespace aide {

namespace {

std::vector<double> to_log(const std::vector<double>& probs) {
  std::vector<double> out(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i)
    out[i] = probs[i] > 0.0 ? std::log(probs[i]) : kNegInf;
  return out;
}

void check_stochastic_row(const std::vector<double>& row, const char* what) {
  double total = 0.0;
  for (double p : row) {
    if (p < 0.0) throw std::invalid_argument(std::string(what) + ": negative entry");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument(std::string(what) + ": row does not sum to 1");
}

}  // namespace

DiscreteHmm::DiscreteHmm(std::vector<double> initial_dist,
                         std::vector<std::vector<double>> transition,
                         std::vector<std::vector<double>> emission, int n_steps)
    : n_states_(static_cast<int>(initial_dist.size())),
      n_steps_(n_steps),
      initial_dist_(std::move(initial_dist)),
      transition_(std::move(transition)),
      emission_(std::move(emission)) {
  if (n_states_ < 1) throw std::invalid_argument("DiscreteHmm: need >= 1 state");
  if (n_steps_ < 1) throw std::invalid_argument("DiscreteHmm: need >= 1 step");
  if (static_cast<int>(transition_.size()) != n_states_ ||
      static_cast<int>(emission_.size()) != n_states_)
    throw std::invalid_argument("DiscreteHmm: matrix row count != n_states");
  n_symbols_ = static_cast<int>(emission_.front().size());
  check_stochastic_row(initial_dist_, "initial_dist");
  for (const auto& row : transition_) {
    if (static_cast<int>(row.size()) != n_states_)
      throw std::invalid_argument("DiscreteHmm: transition row length");
    check_stochastic_row(row, "transition");
  }
  for (const auto& row : emission_) {
    if (static_cast<int>(row.size()) != n_symbols_)
      throw std::invalid_argument("DiscreteHmm: emission row length");
    check_stochastic_row(row, "emission");
  }
  log_initial_ = to_log(initial_dist_);
  log_transition_.reserve(n_states_);
  log_emission_.reserve(n_states_);
  for (const auto& row : transition_) log_transition_.push_back(to_log(row));
  for (const auto& row : emission_) log_emission_.push_back(to_log(row));
}

void DiscreteHmm::check_symbols(const SymbolSequence& obs) const {
  for (int symbol : obs) {
    if (symbol < 0 || symbol >= n_symbols_)
      throw std::invalid_argument("DiscreteHmm: observation symbol out of alphabet");
  }
}

double DiscreteHmm::log_prefix_joint(const StateSequence& states,
                                     const SymbolSequence& obs) const {
  const std::size_t t = states.size();
  if (t == 0 || t > obs.size())
    throw std::invalid_argument("log_prefix_joint: prefix length out of range");
  check_symbols(obs);
  for (int s : states) {
    if (s < 0 || s >= n_states_)
      throw std::invalid_argument("log_prefix_joint: state out of range");
  }
  double acc = log_initial_[states[0]] + log_emission_[states[0]][obs[0]];
  for (std::size_t i = 1; i < t; ++i) {
    acc += log_transition_[states[i - 1]][states[i]] +
           log_emission_[states[i]][obs[i]];
  }
  return acc;
}

double DiscreteHmm::log_joint(const StateSequence& states,
                              const SymbolSequence& obs) const {
  if (states.size() != static_cast<std::size_t>(n_steps_) ||
      obs.size() != static_cast<std::size_t>(n_steps_))
    throw std::invalid_argument("log_joint: sequence length != n_steps");
  return log_prefix_joint(states, obs);
}

std::pair<StateSequence, SymbolSequence> DiscreteHmm::simulate(
    RandomStream& rng) const {
  StateSequence states(n_steps_);
  SymbolSequence obs(n_steps_);
  states[0] = rng.categorical(initial_dist_);
  obs[0] = rng.categorical(emission_[states[0]]);
  for (int t = 1; t < n_steps_; ++t) {
    states[t] = rng.categorical(transition_[states[t - 1]]);
    obs[t] = rng.categorical(emission_[states[t]]);
  }
  return {states, obs};
}

HmmForwardResult hmm_forward(const DiscreteHmm& model, const SymbolSequence& obs) {
  if (obs.size() != static_cast<std::size_t>(model.n_steps()))
    throw std::invalid_argument("hmm_forward: observation length != n_steps");
  model.check_symbols(obs);
  const int n = model.n_states();
  const int steps = model.n_steps();
  HmmForwardResult result;
  result.filtering.assign(steps, std::vector<double>(n, 0.0));
  result.log_marginal = 0.0;

  std::vector<double> alpha(n);
  for (int s = 0; s < n; ++s)
    alpha[s] = model.initial_dist()[s] * model.emission()[s][obs[0]];
  for (int t = 0;; ++t) {
    double scale = 0.0;
    for (double a : alpha) scale += a;
    if (scale <= 0.0) {
      result.log_marginal = kNegInf;
      return result;
    }
    for (int s = 0; s < n; ++s) result.filtering[t][s] = alpha[s] / scale;
    result.log_marginal += std::log(scale);
    if (t + 1 == steps) break;
    std::vector<double> next(n, 0.0);
    for (int s = 0; s < n; ++s) {
      double flow = 0.0;
      for (int r = 0; r < n; ++r)
        flow += result.filtering[t][r] * model.transition()[r][s];
      next[s] = flow * model.emission()[s][obs[t + 1]];
    }
    alpha = std::move(next);
  }
  return result;
}

std::pair<StateSequence, double> hmm_posterior_sample(const DiscreteHmm& model,
                                                      const SymbolSequence& obs,
                                                      RandomStream& rng) {
  const HmmForwardResult fwd = hmm_forward(model, obs);
  if (fwd.log_marginal == kNegInf)
    throw InvalidStateError("hmm_posterior_sample: observations have zero probability");
  const int n = model.n_states();
  const int steps = model.n_steps();
  StateSequence states(steps);
  double log_prob = 0.0;

  states[steps - 1] = rng.categorical(fwd.filtering[steps - 1]);
  log_prob += std::log(fwd.filtering[steps - 1][states[steps - 1]]);
  for (int t = steps - 2; t >= 0; --t) {
    std::vector<double> cond(n);
    double total = 0.0;
    for (int s = 0; s < n; ++s) {
      cond[s] = fwd.filtering[t][s] * model.transition()[s][states[t + 1]];
      total += cond[s];
    }
    for (int s = 0; s < n; ++s) cond[s] /= total;
    states[t] = rng.categorical(cond);
    log_prob += std::log(cond[states[t]]);
  }
  return {states, log_prob};
}

StateSequence hmm_gibbs_step(const DiscreteHmm& model, const SymbolSequence& obs,
                             const StateSequence& states, int site,
                             RandomStream& rng) {
  if (site < 0 || site >= model.n_steps())
    throw std::invalid_argument("hmm_gibbs_step: site out of range");
  if (states.size() != static_cast<std::size_t>(model.n_steps()))
    throw std::invalid_argument("hmm_gibbs_step: sequence length != n_steps");
  const int n = model.n_states();
  std::vector<double> cond(n);
  double total = 0.0;
  for (int s = 0; s < n; ++s) {
    double p = site == 0 ? model.initial_dist()[s]
                         : model.transition()[states[site - 1]][s];
    p *= model.emission()[s][obs[site]];
    if (site + 1 < model.n_steps()) p *= model.transition()[s][states[site + 1]];
    cond[s] = p;
    total += p;
  }
  if (total <= 0.0)
    throw InvalidStateError("hmm_gibbs_step: full conditional has zero mass");
  for (int s = 0; s < n; ++s) cond[s] /= total;
  StateSequence out = states;
  out[site] = rng.categorical(cond);
  return out;
}

Model<StateSequence> make_hmm_model(const DiscreteHmm& model,
                                    const SymbolSequence& obs) {
  const HmmForwardResult fwd = hmm_forward(model, obs);
  Model<StateSequence> posed;
  posed.log_joint = [model, obs](const StateSequence& states) {
    return model.log_joint(states, obs);
  };
  posed.exact_log_marginal = fwd.log_marginal;
  Distribution<StateSequence> posterior;
  posterior.sample = [model, obs](RandomStream& rng) {
    return hmm_posterior_sample(model, obs, rng).first;
  };
  const double log_marginal = fwd.log_marginal;
  posterior.log_density = [model, obs, log_marginal](const StateSequence& states) {
    return model.log_joint(states, obs) - log_marginal;
  };
  posed.exact_posterior = std::move(posterior);
  return posed;
}

}  // namespace aide
