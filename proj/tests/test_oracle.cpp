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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "aide/numeric.hpp"
#include "aide/properties.hpp"
#include "aide/random.hpp"

using namespace aide;
using oracle::DiscreteDistribution;

TEST_CASE("symmetric_kl basics") {
  DiscreteDistribution p{{0, 1}, {0.6, 0.4}};
  DiscreteDistribution q{{0, 1}, {0.5, 0.5}};
  CHECK(oracle::symmetric_kl(p, p) == 0.0);

  // Recomputed term by term.
  const double expected = 0.6 * std::log(1.2) + 0.4 * std::log(0.8) +
                          0.5 * std::log(5.0 / 6.0) + 0.5 * std::log(5.0 / 4.0);
  CHECK(oracle::symmetric_kl(p, q) == doctest::Approx(expected).epsilon(1e-14));

  DiscreteDistribution disjoint{{0, 1}, {1.0, 0.0}};
  DiscreteDistribution other{{0, 1}, {0.0, 1.0}};
  CHECK(oracle::symmetric_kl(disjoint, other) == kPosInf);

  DiscreteDistribution mismatched{{0, 2}, {0.5, 0.5}};
  CHECK_THROWS_AS(oracle::symmetric_kl(p, mismatched), std::invalid_argument);
}

TEST_CASE("gaussian_symmetric_kl closed forms") {
  CHECK(std::abs(oracle::gaussian_symmetric_kl(1.0, 2.0, 1.0, 2.0)) < 1e-12);
  // Equal variances sigma^2, means delta apart: delta^2 / sigma^2.
  const double sigma2 = 0.49;
  const double delta = 0.3;
  CHECK(oracle::gaussian_symmetric_kl(0.0, sigma2, delta, sigma2) ==
        doctest::Approx(delta * delta / sigma2).epsilon(1e-12));
}

TEST_CASE("gaussian_symmetric_kl agrees with Monte Carlo in 3D") {
  Eigen::VectorXd m1(3), m2(3);
  m1 << 0.2, -0.1, 0.4;
  m2 << -0.3, 0.2, 0.1;
  Eigen::MatrixXd a(3, 3), b(3, 3);
  a << 1.0, 0.3, 0.1, 0.3, 0.8, 0.2, 0.1, 0.2, 0.9;
  b << 1.2, -0.2, 0.0, -0.2, 0.7, 0.1, 0.0, 0.1, 1.1;

  const double closed = oracle::gaussian_symmetric_kl(m1, a, m2, b);

  // Simple Monte Carlo with exact densities: E_p[log p - log q] + E_q[...].
  const Eigen::LLT<Eigen::MatrixXd> llt_a(a), llt_b(b);
  auto log_density = [](const Eigen::LLT<Eigen::MatrixXd>& llt,
                        const Eigen::VectorXd& mean, const Eigen::VectorXd& x) {
    const Eigen::VectorXd z = llt.matrixL().solve(x - mean);
    double log_det = 0.0;
    for (int i = 0; i < 3; ++i) log_det += std::log(llt.matrixLLT()(i, i));
    return -0.5 * z.squaredNorm() - log_det -
           1.5 * std::log(2.0 * std::numbers::pi);
  };
  RandomStream rng(101);
  const int n = 600000;
  std::vector<double> terms;
  terms.reserve(n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd z(3);
    for (int k = 0; k < 3; ++k) z(k) = rng.normal();
    const Eigen::VectorXd xp = m1 + llt_a.matrixL() * z;
    for (int k = 0; k < 3; ++k) z(k) = rng.normal();
    const Eigen::VectorXd xq = m2 + llt_b.matrixL() * z;
    terms.push_back(log_density(llt_a, m1, xp) - log_density(llt_b, m2, xp) +
                    log_density(llt_b, m2, xq) - log_density(llt_a, m1, xq));
  }
  const double mc = mean(terms);
  const double se = standard_error(terms);
  CHECK(std::abs(mc - closed) <= 3.0 * se);
}

TEST_CASE("enumerate_smc_output sums to one and matches simulation") {
  const TinyDiscreteSmc tiny = make_tiny_discrete_smc();
  const DiscreteDistribution exact =
      oracle::enumerate_smc_output(tiny.spec, tiny.support);
  double total = 0.0;
  for (double p : exact.probs) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

  long long counts[2] = {0, 0};
  const int runs = 1000000;
  for (int i = 0; i < runs; ++i) {
    RandomStream rng = RandomStream::from_key(5, {static_cast<std::uint64_t>(i)});
    counts[smc_run(tiny.spec, rng).output] += 1;
  }
  double tv = 0.0;
  for (int k = 0; k < 2; ++k)
    tv += std::abs(static_cast<double>(counts[k]) / runs - exact.probs[k]);
  CHECK(tv * 0.5 <= 0.005);
}

TEST_CASE("enumerate_smc_output trivial cases") {
  // Single particle, single step: output distribution is the init kernel.
  SmcSpec<int> spec;
  spec.n_particles = 1;
  std::vector<double> init{0.3, 0.7};
  spec.init.sample = [init](RandomStream& rng) { return rng.categorical(init); };
  spec.init.log_density = [init](const int& x) { return std::log(init[x]); };
  spec.init_target.log_density = [](const int&) { return 0.0; };  // uniform
  // Weights are 1/init(x); outputs still resampled proportionally to them.
  const DiscreteDistribution out =
      oracle::enumerate_smc_output(spec, {0, 1});
  // q(x) = init(x) * W(x) with single particle W = 1, so q = init.
  CHECK(out.probs[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(out.probs[1] == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("deterministic kernels enumerate to a point mass") {
  SmcSpec<int> spec;
  spec.n_particles = 2;
  std::vector<double> init{1.0, 0.0};
  spec.init.sample = [init](RandomStream& rng) { return rng.categorical(init); };
  spec.init.log_density = [](const int& x) {
    return x == 0 ? 0.0 : kNegInf;
  };
  spec.init_target.log_density = [](const int& x) {
    return x == 0 ? std::log(0.4) : std::log(0.6);
  };
  SmcStep<int> step;
  step.target = spec.init_target;
  // Forward and backward kernels both hold the state fixed.
  step.forward.sample = [](const int& x, RandomStream&) { return x; };
  step.forward.log_density = [](const int& x_new, const int& x_prev) {
    return x_new == x_prev ? 0.0 : kNegInf;
  };
  step.backward = step.forward;
  spec.steps.push_back(step);
  const DiscreteDistribution out = oracle::enumerate_smc_output(spec, {0, 1});
  CHECK(out.probs[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out.probs[1] == 0.0);
}

TEST_CASE("enumeration budget is enforced") {
  const TinyDiscreteSmc tiny = make_tiny_discrete_smc();
  CHECK_THROWS_AS(oracle::enumerate_traces(tiny.spec, tiny.support, 10),
                  EnumerationBudgetError);
}

TEST_CASE("mh_transition_matrix rows are stochastic") {
  const std::vector<double> target{0.35, 0.05, 0.3, 0.1, 0.2};
  std::vector<std::vector<double>> proposal(5, std::vector<double>(5, 0.0));
  for (int i = 0; i < 5; ++i) {
    if (i > 0) proposal[i][i - 1] = 0.5;
    if (i < 4) proposal[i][i + 1] = 0.5;
    if (i == 0 || i == 4) proposal[i][i] = 0.5;
  }
  const auto kernel = oracle::mh_transition_matrix(target, proposal);
  for (const auto& row : kernel) {
    double total = 0.0;
    for (double v : row) {
      CHECK(v >= 0.0);
      total += v;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("quadrature integrates a normalized density to one") {
  auto log_normal = [](double x) {
    return -0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi);
  };
  CHECK(oracle::quadrature_integral(log_normal, -10.0, 10.0, 2000) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(oracle::quadrature_expectation([](double x) { return x; }, log_normal,
                                       -10.0, 10.0, 2000) ==
        doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("ks test separates shifted samples and accepts equal ones") {
  RandomStream rng(17);
  std::vector<double> a(4000), b(4000), c(4000);
  for (int i = 0; i < 4000; ++i) {
    a[i] = rng.normal();
    b[i] = rng.normal();
    c[i] = rng.normal() + 0.3;
  }
  CHECK(oracle::two_sample_ks_pass(a, b, 0.001));
  CHECK_FALSE(oracle::two_sample_ks_pass(a, c, 0.001));
}

TEST_CASE("chi-square gof accepts true distribution, rejects wrong one") {
  RandomStream rng(23);
  const std::vector<double> probs{0.2, 0.5, 0.3};
  std::vector<long long> counts(3, 0);
  for (int i = 0; i < 100000; ++i) counts[rng.categorical(probs)] += 1;
  CHECK(oracle::chi_square_gof_pass(counts, probs, 0.001));
  CHECK_FALSE(oracle::chi_square_gof_pass(counts, {0.25, 0.45, 0.3}, 0.001));
}
