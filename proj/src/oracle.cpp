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

#include "aide/oracle.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "aide/errors.hpp"
#include "aide/numeric.hpp"

namespace aide::oracle {

void DiscreteDistribution::validate() const {
  if (support.size() != probs.size())
    throw std::invalid_argument("DiscreteDistribution: support/probs size mismatch");
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0)
      throw std::invalid_argument("DiscreteDistribution: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("DiscreteDistribution: probabilities must sum to 1");
}

double DiscreteDistribution::prob_of(int value) const {
  for (std::size_t i = 0; i < support.size(); ++i)
    if (support[i] == value) return probs[i];
  throw std::invalid_argument("DiscreteDistribution: value not in support");
}

double symmetric_kl(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  if (p.support != q.support)
    throw std::invalid_argument("symmetric_kl: supports must match");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.probs.size(); ++i) {
    const double a = p.probs[i];
    const double b = q.probs[i];
    if (a > 0.0) {
      if (b == 0.0) return kPosInf;
      acc += a * std::log(a / b);
    }
    if (b > 0.0) {
      if (a == 0.0) return kPosInf;
      acc += b * std::log(b / a);
    }
  }
  return acc;
}

double gaussian_kl(const Eigen::VectorXd& m1, const Eigen::MatrixXd& c1,
                   const Eigen::VectorXd& m2, const Eigen::MatrixXd& c2) {
  const int d = static_cast<int>(m1.size());
  if (m2.size() != d || c1.rows() != d || c2.rows() != d)
    throw std::invalid_argument("gaussian_kl: dimension mismatch");
  const Eigen::LLT<Eigen::MatrixXd> llt1(c1);
  const Eigen::LLT<Eigen::MatrixXd> llt2(c2);
  if (llt1.info() != Eigen::Success || llt2.info() != Eigen::Success)
    throw NumericalError("gaussian_kl: covariance is not positive definite");
  auto log_det = [](const Eigen::LLT<Eigen::MatrixXd>& llt) {
    double acc = 0.0;
    for (int i = 0; i < llt.matrixLLT().rows(); ++i)
      acc += std::log(llt.matrixLLT()(i, i));
    return 2.0 * acc;
  };
  const Eigen::MatrixXd c2_inv_c1 = llt2.solve(c1);
  const Eigen::VectorXd dm = m2 - m1;
  return 0.5 * (c2_inv_c1.trace() + dm.dot(llt2.solve(dm)) - d +
                log_det(llt2) - log_det(llt1));
}

double gaussian_symmetric_kl(const Eigen::VectorXd& m1, const Eigen::MatrixXd& c1,
                             const Eigen::VectorXd& m2, const Eigen::MatrixXd& c2) {
  return gaussian_kl(m1, c1, m2, c2) + gaussian_kl(m2, c2, m1, c1);
}

double gaussian_symmetric_kl(double m1, double var1, double m2, double var2) {
  Eigen::VectorXd mu1(1), mu2(1);
  Eigen::MatrixXd cov1(1, 1), cov2(1, 1);
  mu1 << m1;
  mu2 << m2;
  cov1 << var1;
  cov2 << var2;
  return gaussian_symmetric_kl(mu1, cov1, mu2, cov2);
}

namespace {

// Weight functions recomputed from the explicit ratio formulas.
double oracle_log_w1(const SmcSpec<int>& spec, int value) {
  return spec.init_target.log_density(value) - spec.init.log_density(value);
}

double oracle_log_wt(const SmcSpec<int>& spec, std::size_t s, int parent,
                     int value) {
  const SmcStep<int>& step = spec.steps[s];
  if (!step.backward)
    throw std::invalid_argument(
        "oracle: enumeration requires explicit backward kernels");
  return step.target.log_density(value) +
         step.backward->log_density(parent, value) -
         spec.target_before_step(s).log_density(parent) -
         step.forward.log_density(value, parent);
}

// All per-step log weights of a trace, from the ratio formulas.
std::vector<std::vector<double>> oracle_weights(const SmcSpec<int>& spec,
                                                const Trace<int>& trace) {
  const int P = spec.n_particles;
  const int T = spec.n_steps();
  std::vector<std::vector<double>> lw(T, std::vector<double>(P));
  for (int i = 0; i < P; ++i)
    lw[0][i] = oracle_log_w1(spec, trace.particles[0][i]);
  for (int t = 1; t < T; ++t) {
    for (int i = 0; i < P; ++i) {
      const int parent = trace.particles[t - 1][trace.ancestors[t - 1][i]];
      lw[t][i] = oracle_log_wt(spec, t - 1, parent, trace.particles[t][i]);
    }
  }
  return lw;
}

double log_normalized_weight(const std::vector<double>& lw, int index) {
  return lw[index] - log_sum_exp(lw);
}

}  // namespace

double log_q_trace(const SmcSpec<int>& spec, const Trace<int>& trace) {
  const int P = spec.n_particles;
  const int T = spec.n_steps();
  const auto lw = oracle_weights(spec, trace);
  double acc = 0.0;
  for (int i = 0; i < P; ++i)
    acc += spec.init.log_density(trace.particles[0][i]);
  for (int t = 1; t < T; ++t) {
    for (int i = 0; i < P; ++i) {
      const int a = trace.ancestors[t - 1][i];
      acc += log_normalized_weight(lw[t - 1], a) +
             spec.steps[t - 1].forward.log_density(trace.particles[t][i],
                                                   trace.particles[t - 1][a]);
    }
  }
  acc += log_normalized_weight(lw[T - 1], trace.output_index);
  return acc;
}

double log_r_trace(const SmcSpec<int>& spec, const Trace<int>& trace, int x) {
  const int P = spec.n_particles;
  const int T = spec.n_steps();
  if (trace.particles[T - 1][trace.output_index] != x) return kNegInf;

  // Ancestral trajectory indices recovered from the trace.
  std::vector<int> clamped(T);
  clamped[T - 1] = trace.output_index;
  for (int t = T - 2; t >= 0; --t)
    clamped[t] = trace.ancestors[t][clamped[t + 1]];

  const auto lw = oracle_weights(spec, trace);
  double acc = -static_cast<double>(T) * std::log(static_cast<double>(P));
  for (int t = 1; t < T; ++t) {
    const SmcStep<int>& step = spec.steps[t - 1];
    if (!step.backward)
      throw std::invalid_argument(
          "oracle: enumeration requires explicit backward kernels");
    acc += step.backward->log_density(trace.particles[t - 1][clamped[t - 1]],
                                      trace.particles[t][clamped[t]]);
  }
  for (int i = 0; i < P; ++i) {
    if (i == clamped[0]) continue;
    acc += spec.init.log_density(trace.particles[0][i]);
  }
  for (int t = 1; t < T; ++t) {
    for (int i = 0; i < P; ++i) {
      if (i == clamped[t]) continue;
      const int a = trace.ancestors[t - 1][i];
      acc += log_normalized_weight(lw[t - 1], a) +
             spec.steps[t - 1].forward.log_density(trace.particles[t][i],
                                                   trace.particles[t - 1][a]);
    }
  }
  return acc;
}

std::vector<Trace<int>> enumerate_traces(const SmcSpec<int>& spec,
                                         const std::vector<int>& support,
                                         long long budget) {
  const int P = spec.n_particles;
  const int T = spec.n_steps();
  const long long n_values = static_cast<long long>(support.size());

  // Count: |support|^(P T) * P^(P (T-1)) * P.
  long long count = 1;
  auto mul_checked = [&count, budget](long long f) {
    count *= f;
    if (count > budget)
      throw EnumerationBudgetError("enumerate_traces: budget exceeded");
  };
  for (int k = 0; k < P * T; ++k) mul_checked(n_values);
  for (int k = 0; k < P * (T - 1); ++k) mul_checked(P);
  mul_checked(P);

  // Odometer over value slots, ancestor slots, and the output index, with
  // the output index fastest and the first value slot slowest.
  const int n_value_slots = P * T;
  const int n_ancestor_slots = P * (T - 1);
  std::vector<int> digits(n_value_slots + n_ancestor_slots + 1, 0);
  std::vector<int> radix(digits.size());
  for (int k = 0; k < n_value_slots; ++k) radix[k] = static_cast<int>(n_values);
  for (int k = 0; k < n_ancestor_slots; ++k) radix[n_value_slots + k] = P;
  radix.back() = P;

  std::vector<Trace<int>> traces;
  traces.reserve(static_cast<std::size_t>(count));
  while (true) {
    Trace<int> trace;
    trace.particles.assign(T, std::vector<int>(P));
    trace.ancestors.assign(T - 1, std::vector<int>(P));
    int slot = 0;
    for (int t = 0; t < T; ++t)
      for (int i = 0; i < P; ++i) trace.particles[t][i] = support[digits[slot++]];
    for (int t = 0; t < T - 1; ++t)
      for (int i = 0; i < P; ++i) trace.ancestors[t][i] = digits[slot++];
    trace.output_index = digits[slot];
    traces.push_back(std::move(trace));

    int k = static_cast<int>(digits.size()) - 1;
    while (k >= 0 && ++digits[k] == radix[k]) digits[k--] = 0;
    if (k < 0) break;
  }
  return traces;
}

DiscreteDistribution enumerate_smc_output(const SmcSpec<int>& spec,
                                          const std::vector<int>& support,
                                          long long budget) {
  const auto traces = enumerate_traces(spec, support, budget);
  DiscreteDistribution out;
  out.support = support;
  out.probs.assign(support.size(), 0.0);
  std::map<int, std::size_t> index_of;
  for (std::size_t i = 0; i < support.size(); ++i) index_of[support[i]] = i;
  for (const auto& trace : traces) {
    const int x = trace.particles.back()[trace.output_index];
    const double lq = log_q_trace(spec, trace);
    if (lq > kNegInf) out.probs[index_of.at(x)] += std::exp(lq);
  }
  double total = 0.0;
  for (double p : out.probs) total += p;
  if (std::abs(total - 1.0) > 1e-9)
    throw NumericalError("enumerate_smc_output: trace masses sum to " +
                         std::to_string(total));
  for (double& p : out.probs) p /= total;
  return out;
}

std::vector<int> trace_key(const Trace<int>& trace) {
  std::vector<int> key;
  for (const auto& row : trace.particles) key.insert(key.end(), row.begin(), row.end());
  for (const auto& row : trace.ancestors) key.insert(key.end(), row.begin(), row.end());
  key.push_back(trace.output_index);
  return key;
}

HmmEnumeration enumerate_hmm_posterior(const DiscreteHmm& model,
                                       const SymbolSequence& obs,
                                       long long budget) {
  const int n = model.n_states();
  const int T = model.n_steps();
  long long count = 1;
  for (int t = 0; t < T; ++t) {
    count *= n;
    if (count > budget)
      throw EnumerationBudgetError("enumerate_hmm_posterior: budget exceeded");
  }
  HmmEnumeration out;
  out.sequences.reserve(static_cast<std::size_t>(count));
  std::vector<double> log_joints;
  log_joints.reserve(static_cast<std::size_t>(count));
  StateSequence seq(T, 0);
  while (true) {
    out.sequences.push_back(seq);
    log_joints.push_back(model.log_joint(seq, obs));
    int k = T - 1;
    while (k >= 0 && ++seq[k] == n) seq[k--] = 0;
    if (k < 0) break;
  }
  out.log_marginal = log_sum_exp(log_joints);
  out.posterior.resize(log_joints.size());
  for (std::size_t i = 0; i < log_joints.size(); ++i)
    out.posterior[i] = std::exp(log_joints[i] - out.log_marginal);
  return out;
}

std::vector<std::vector<double>> mh_transition_matrix(
    const std::vector<double>& target_probs,
    const std::vector<std::vector<double>>& proposal) {
  const std::size_t n = target_probs.size();
  std::vector<std::vector<double>> kernel(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double off_diagonal = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || proposal[i][j] == 0.0) continue;
      const double ratio =
          target_probs[j] * proposal[j][i] / (target_probs[i] * proposal[i][j]);
      kernel[i][j] = proposal[i][j] * std::min(1.0, ratio);
      off_diagonal += kernel[i][j];
    }
    kernel[i][i] = 1.0 - off_diagonal;
  }
  return kernel;
}

std::vector<double> chain_distribution(const std::vector<double>& initial,
                                       const std::vector<std::vector<double>>& kernel,
                                       int steps) {
  std::vector<double> dist = initial;
  const std::size_t n = initial.size();
  for (int s = 0; s < steps; ++s) {
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[j] += dist[i] * kernel[i][j];
    dist = std::move(next);
  }
  return dist;
}

double quadrature_integral(const std::function<double(double)>& log_f,
                           double lo, double hi, int n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("quadrature_integral: n must be even and >= 2");
  const double h = (hi - lo) / n;
  double acc = std::exp(log_f(lo)) + std::exp(log_f(hi));
  for (int k = 1; k < n; ++k) {
    const double weight = (k % 2 == 1) ? 4.0 : 2.0;
    acc += weight * std::exp(log_f(lo + k * h));
  }
  return acc * h / 3.0;
}

double quadrature_expectation(const std::function<double(double)>& f,
                              const std::function<double(double)>& log_density,
                              double lo, double hi, int n) {
  const double mass = quadrature_integral(log_density, lo, hi, n);
  // Signed expectation by splitting f into positive and negative parts.
  const auto positive = [&](double x) {
    const double v = f(x);
    return v > 0.0 ? std::log(v) + log_density(x) : kNegInf;
  };
  const auto negative = [&](double x) {
    const double v = f(x);
    return v < 0.0 ? std::log(-v) + log_density(x) : kNegInf;
  };
  const double pos = quadrature_integral(positive, lo, hi, n);
  const double neg = quadrature_integral(negative, lo, hi, n);
  return (pos - neg) / mass;
}

double mh_chain_symmetric_kl_1d(const std::function<double(double)>& log_target,
                                const std::function<double(double)>& log_init,
                                double proposal_std, int burn_in, double lo,
                                double hi, int n_cells) {
  if (n_cells < 10)
    throw std::invalid_argument("mh_chain_symmetric_kl_1d: grid too coarse");
  const double h = (hi - lo) / n_cells;
  std::vector<double> centers(n_cells);
  std::vector<double> target(n_cells);
  std::vector<double> rho(n_cells);
  for (int j = 0; j < n_cells; ++j) {
    centers[j] = lo + (j + 0.5) * h;
    target[j] = std::exp(log_target(centers[j]));
    rho[j] = std::exp(log_init(centers[j]));
  }
  auto normalize = [](std::vector<double>& v) {
    double total = 0.0;
    for (double x : v) total += x;
    for (double& x : v) x /= total;
  };
  normalize(rho);
  std::vector<double> pi = target;
  normalize(pi);

  // Dense transition matrix with the rejection atom on the diagonal.
  const double norm = 1.0 / (proposal_std * std::sqrt(2.0 * std::numbers::pi));
  std::vector<std::vector<double>> kernel(n_cells, std::vector<double>(n_cells));
  for (int j = 0; j < n_cells; ++j) {
    double accept_mass = 0.0;
    for (int k = 0; k < n_cells; ++k) {
      if (k == j) continue;
      const double z = (centers[k] - centers[j]) / proposal_std;
      const double proposal_density = norm * std::exp(-0.5 * z * z);
      const double accept =
          target[j] > 0.0 ? std::min(1.0, target[k] / target[j]) : 1.0;
      kernel[j][k] = proposal_density * accept * h;
      accept_mass += kernel[j][k];
    }
    kernel[j][j] = std::max(0.0, 1.0 - accept_mass);
  }
  for (int s = 0; s < burn_in; ++s) {
    std::vector<double> next(n_cells, 0.0);
    for (int j = 0; j < n_cells; ++j) {
      if (rho[j] == 0.0) continue;
      for (int k = 0; k < n_cells; ++k) next[k] += rho[j] * kernel[j][k];
    }
    rho = std::move(next);
  }

  double acc = 0.0;
  for (int j = 0; j < n_cells; ++j) {
    if (rho[j] > 0.0 && pi[j] > 0.0)
      acc += rho[j] * std::log(rho[j] / pi[j]) + pi[j] * std::log(pi[j] / rho[j]);
    else if (rho[j] > 0.0 || pi[j] > 0.0)
      return kPosInf;
  }
  return acc;
}

bool two_sample_ks_pass(std::vector<double> a, std::vector<double> b,
                        double alpha) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("two_sample_ks_pass: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d_max = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    const double x = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= x) ++ia;
    while (ib < b.size() && b[ib] <= x) ++ib;
    d_max = std::max(d_max, std::abs(ia / na - ib / nb));
  }
  const double c_alpha = std::sqrt(-0.5 * std::log(alpha / 2.0));
  const double threshold = c_alpha * std::sqrt((na + nb) / (na * nb));
  return d_max <= threshold;
}

bool chi_square_gof_pass(const std::vector<long long>& counts,
                         const std::vector<double>& expected_probs,
                         double alpha) {
  if (counts.size() != expected_probs.size())
    throw std::invalid_argument("chi_square_gof_pass: size mismatch");
  long long total = 0;
  for (long long c : counts) total += c;
  double statistic = 0.0;
  int df = -1;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expected = expected_probs[i] * static_cast<double>(total);
    if (expected == 0.0) {
      if (counts[i] != 0) return false;
      continue;
    }
    const double diff = static_cast<double>(counts[i]) - expected;
    statistic += diff * diff / expected;
    ++df;
  }
  if (df < 1) return true;
  const boost::math::chi_squared dist(df);
  return statistic <= boost::math::quantile(dist, 1.0 - alpha);
}

}  // namespace aide::oracle
