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

#ifndef AIDE_KERNELS_HPP
#define AIDE_KERNELS_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "aide/errors.hpp"
#include "aide/numeric.hpp"
#include "aide/random.hpp"

namespace aide {

/// A distribution we can sample from and whose normalized log density we can
/// evaluate. Used for SMC initialization kernels, importance proposals, and
/// variational approximations.
template <typename X>
struct Distribution {
  std::function<X(RandomStream&)> sample;
  std::function<double(const X&)> log_density;
};

/// An unnormalized target density in log space.
template <typename X>
struct UnnormalizedTarget {
  std::function<double(const X&)> log_density;
};

/// A Markov transition kernel.
///
/// `log_density` evaluates log k(x_new; x_prev) and may be empty: kernels
/// built from Metropolis-Hastings steps have a point mass at the current
/// state and expose no density. Such kernels are only usable in SMC steps
/// that exploit detailed balance, where the kernel density cancels out of
/// the weights.
///
/// `detailed_balance` declares that the kernel is in detailed balance with
/// the target it was built against (and is therefore its own reversal).
/// The flag is declared at construction, never inferred.
template <typename X>
struct MarkovKernel {
  std::function<X(const X&, RandomStream&)> sample;
  std::function<double(const X&, const X&)> log_density;  // (x_new, x_prev)
  bool detailed_balance = false;
};

/// One Metropolis-Hastings accept/reject step.
///
/// A proposal without `log_density` is treated as symmetric and its density
/// terms are dropped from the acceptance ratio. The accept uniform is drawn
/// on every call, accepted or not, so the stream position never depends on
/// the outcome.
template <typename X>
X mh_step(const UnnormalizedTarget<X>& target, const MarkovKernel<X>& proposal,
          const X& x, RandomStream& rng) {
  const double log_p_x = target.log_density(x);
  if (log_p_x == kNegInf)
    throw InvalidStateError("mh_step: current state has zero target density");
  const X proposed = proposal.sample(x, rng);
  double log_ratio = target.log_density(proposed) - log_p_x;
  if (proposal.log_density) {
    log_ratio += proposal.log_density(x, proposed) -
                 proposal.log_density(proposed, x);
  }
  const double u = rng.uniform();
  if (std::log(u) < log_ratio) return proposed;
  return x;
}

/// Wraps `n_sweeps` MH steps against a fixed target into a kernel that is in
/// detailed balance with that target.
template <typename X>
MarkovKernel<X> make_mh_kernel(UnnormalizedTarget<X> target,
                               MarkovKernel<X> proposal, int n_sweeps = 1) {
  if (n_sweeps < 1)
    throw std::invalid_argument("make_mh_kernel: n_sweeps must be >= 1");
  MarkovKernel<X> kernel;
  kernel.detailed_balance = true;
  kernel.sample = [target, proposal, n_sweeps](const X& x, RandomStream& rng) {
    X state = x;
    for (int i = 0; i < n_sweeps; ++i) state = mh_step(target, proposal, state, rng);
    return state;
  };
  return kernel;
}

/// Geometric bridge between two unnormalized densities:
/// log p_beta(x) = (1 - beta) log start(x) + beta log end(x).
template <typename X>
UnnormalizedTarget<X> geometric_anneal(UnnormalizedTarget<X> start,
                                       UnnormalizedTarget<X> end, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0))
    throw std::invalid_argument("geometric_anneal: beta must be in [0, 1]");
  if (beta == 0.0) return start;
  if (beta == 1.0) return end;
  UnnormalizedTarget<X> out;
  out.log_density = [start, end, beta](const X& x) {
    const double a = start.log_density(x);
    const double b = end.log_density(x);
    if (a == kNegInf || b == kNegInf) return kNegInf;
    return (1.0 - beta) * a + beta * b;
  };
  return out;
}

/// A sequence of T unnormalized targets; the last one must equal the joint
/// density of the model being annealed toward.
template <typename X>
struct AnnealingSchedule {
  int n_steps = 0;  // T >= 1
  std::function<UnnormalizedTarget<X>(int)> target_at;  // index 0..T-1

  UnnormalizedTarget<X> operator[](int t) const { return target_at(t); }
};

/// Evenly spaced geometric schedule with betas (1/T, 2/T, ..., 1).
template <typename X>
AnnealingSchedule<X> geometric_schedule(UnnormalizedTarget<X> start,
                                        UnnormalizedTarget<X> end, int n_steps) {
  if (n_steps < 1)
    throw std::invalid_argument("geometric_schedule: n_steps must be >= 1");
  std::vector<double> betas(n_steps);
  for (int t = 0; t < n_steps; ++t)
    betas[t] = static_cast<double>(t + 1) / static_cast<double>(n_steps);
  AnnealingSchedule<X> schedule;
  schedule.n_steps = n_steps;
  schedule.target_at = [start, end, betas](int t) {
    return geometric_anneal(start, end, betas.at(t));
  };
  return schedule;
}

/// Geometric schedule on an arbitrary beta grid; the grid must end at 1.
template <typename X>
AnnealingSchedule<X> geometric_schedule(UnnormalizedTarget<X> start,
                                        UnnormalizedTarget<X> end,
                                        std::vector<double> betas) {
  if (betas.empty())
    throw std::invalid_argument("geometric_schedule: empty beta grid");
  if (std::abs(betas.back() - 1.0) > 1e-12)
    throw std::invalid_argument("geometric_schedule: beta grid must end at 1");
  AnnealingSchedule<X> schedule;
  schedule.n_steps = static_cast<int>(betas.size());
  schedule.target_at = [start, end, betas](int t) {
    return geometric_anneal(start, end, betas.at(t));
  };
  return schedule;
}

/// Schedule whose every entry is the same target (the MCMC-as-annealing
/// special case).
template <typename X>
AnnealingSchedule<X> constant_schedule(UnnormalizedTarget<X> target,
                                       int n_steps) {
  if (n_steps < 1)
    throw std::invalid_argument("constant_schedule: n_steps must be >= 1");
  AnnealingSchedule<X> schedule;
  schedule.n_steps = n_steps;
  schedule.target_at = [target](int) { return target; };
  return schedule;
}

/// Gaussian random-walk proposal on scalars. Symmetric; density omitted.
MarkovKernel<double> gaussian_random_walk(double step_size);

}  // namespace aide

#endif  // AIDE_KERNELS_HPP
