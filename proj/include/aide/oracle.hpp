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

#ifndef AIDE_ORACLE_HPP
#define AIDE_ORACLE_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "aide/hmm.hpp"
#include "aide/smc.hpp"

// Independent references: exhaustive enumerations, closed forms, and
// quadrature. Everything in this header recomputes its answers from first
// principles rather than calling the samplers it is used to check; it backs
// the statistical test suites and is not part of the inference path.

namespace aide::oracle {

/// A finite distribution over integer-labeled points.
struct DiscreteDistribution {
  std::vector<int> support;
  std::vector<double> probs;

  void validate() const;
  double prob_of(int value) const;
};

/// Symmetrized KL divergence between two finite distributions on the same
/// support list. Returns +inf when the supports' positive parts disagree.
double symmetric_kl(const DiscreteDistribution& p, const DiscreteDistribution& q);

/// KL(N(m1, c1) || N(m2, c2)) in closed form.
double gaussian_kl(const Eigen::VectorXd& m1, const Eigen::MatrixXd& c1,
                   const Eigen::VectorXd& m2, const Eigen::MatrixXd& c2);

double gaussian_symmetric_kl(const Eigen::VectorXd& m1, const Eigen::MatrixXd& c1,
                             const Eigen::VectorXd& m2, const Eigen::MatrixXd& c2);

/// 1D convenience overload (variances, not standard deviations).
double gaussian_symmetric_kl(double m1, double var1, double m2, double var2);

/// Joint trace density q(u, x) of the SMC sampler, recomputed from the
/// spec's kernels and targets via the explicit product formula. Requires
/// every step to carry an explicit backward kernel (so all densities are
/// evaluable). The output x is read off the trace.
double log_q_trace(const SmcSpec<int>& spec, const Trace<int>& trace);

/// Meta-inference trace density r(u; x): the clamped ancestral trajectory
/// is recovered from the ancestors and the output index, the delta factor
/// becomes an index-equality indicator.
double log_r_trace(const SmcSpec<int>& spec, const Trace<int>& trace, int x);

/// All traces of a finite-space SMC spec, in lexicographic order of
/// (particles, ancestors, output index). Throws EnumerationBudgetError when
/// the trace count exceeds `budget`.
std::vector<Trace<int>> enumerate_traces(const SmcSpec<int>& spec,
                                         const std::vector<int>& support,
                                         long long budget = 1'000'000);

/// Exact output distribution of the SMC sampler by summing q(u, x) over all
/// traces.
DiscreteDistribution enumerate_smc_output(const SmcSpec<int>& spec,
                                          const std::vector<int>& support,
                                          long long budget = 1'000'000);

/// Canonical integer encoding of a trace, for counting empirical trace
/// frequencies.
std::vector<int> trace_key(const Trace<int>& trace);

/// Exhaustive posterior over complete state sequences of a small HMM.
struct HmmEnumeration {
  std::vector<StateSequence> sequences;  // lexicographic order
  std::vector<double> posterior;
  double log_marginal;
};
HmmEnumeration enumerate_hmm_posterior(const DiscreteHmm& model,
                                       const SymbolSequence& obs,
                                       long long budget = 10'000);

/// Exact Metropolis-Hastings transition matrix on a finite space:
/// K[i][j] = proposal[i][j] * min(1, p[j] proposal[j][i] / (p[i] proposal[i][j]))
/// for j != i, remainder on the diagonal.
std::vector<std::vector<double>> mh_transition_matrix(
    const std::vector<double>& target_probs,
    const std::vector<std::vector<double>>& proposal);

/// row^T K^steps for a finite-space chain.
std::vector<double> chain_distribution(const std::vector<double>& initial,
                                       const std::vector<std::vector<double>>& kernel,
                                       int steps);

/// Simpson-rule integral of exp(log_f) over [lo, hi] with n panels.
double quadrature_integral(const std::function<double(double)>& log_f,
                           double lo, double hi, int n);

/// E[f(X)] for X with the given unnormalized 1D log density, by quadrature.
double quadrature_expectation(const std::function<double(double)>& f,
                              const std::function<double(double)>& log_density,
                              double lo, double hi, int n);

/// Symmetrized KL between the law of a 1D Metropolis-Hastings chain after
/// `burn_in` steps (Gaussian random-walk proposal, started from `log_init`)
/// and its target, computed by evolving the chain law on a grid. The
/// rejection atom is handled exactly; only the grid discretization and tail
/// truncation approximate.
double mh_chain_symmetric_kl_1d(const std::function<double(double)>& log_target,
                                const std::function<double(double)>& log_init,
                                double proposal_std, int burn_in, double lo,
                                double hi, int n_cells);

/// Two-sample Kolmogorov-Smirnov test: true when the null of equal
/// distributions is NOT rejected at significance alpha.
bool two_sample_ks_pass(std::vector<double> a, std::vector<double> b,
                        double alpha);

/// Chi-square goodness-of-fit: true when observed counts are consistent
/// with the expected probabilities at significance alpha.
bool chi_square_gof_pass(const std::vector<long long>& counts,
                         const std::vector<double>& expected_probs,
                         double alpha);

}  // namespace aide::oracle

#endif  // AIDE_ORACLE_HPP
