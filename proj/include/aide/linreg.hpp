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

#ifndef AIDE_LINREG_HPP
#define AIDE_LINREG_HPP

#include <Eigen/Dense>

#include "aide/model.hpp"
#include "aide/random.hpp"

namespace aide {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Multivariate Gaussian stored with a Cholesky factor of its precision,
/// so both sampling and density evaluation are cheap and stable.
class GaussianDensity {
 public:
  GaussianDensity(Vector mean, Matrix covariance);

  const Vector& mean() const { return mean_; }
  const Matrix& covariance() const { return covariance_; }

  double log_density(const Vector& x) const;
  Vector sample(RandomStream& rng) const;

  Distribution<Vector> as_distribution() const;

 private:
  Vector mean_;
  Matrix covariance_;
  Eigen::LLT<Matrix> covariance_llt_;
  double log_norm_const_;
};

/// Bayesian linear regression with Gaussian prior and known noise variance.
/// The posterior and the evidence are available in closed form.
struct ConjugateLinReg {
  Vector prior_mean;
  Matrix prior_precision;  // symmetric positive definite
  double noise_variance = 1.0;
  Matrix design;           // n x d; may have zero rows
  Vector response;         // n

  int dim() const { return static_cast<int>(prior_mean.size()); }
  int n_data() const { return static_cast<int>(design.rows()); }

  void validate() const;

  /// log p(x, y) = log prior(x) + log likelihood(y | x).
  double log_joint(const Vector& x) const;
};

struct LinRegPosterior {
  Vector mean;
  Matrix covariance;
  double log_marginal;  // log p(y)
};

/// Conjugate posterior and evidence, computed through the Cholesky factor
/// of the posterior precision.
LinRegPosterior linreg_posterior(const ConjugateLinReg& model);

/// Posed problem: joint density, exact evidence, exact posterior sampler.
Model<Vector> make_linreg_model(const ConjugateLinReg& model);

/// Axis-aligned Gaussian; the mean-field variational family used here.
struct DiagonalGaussian {
  Vector mean;
  Vector variances;

  double log_density(const Vector& x) const;
  Vector sample_at(RandomStream& rng) const;
  Distribution<Vector> as_distribution() const;
};

/// The KL(q || p)-optimal diagonal Gaussian approximation to a Gaussian
/// posterior: same mean, precisions taken from the posterior precision
/// diagonal.
DiagonalGaussian fit_meanfield_gaussian(const Vector& posterior_mean,
                                        const Matrix& posterior_cov);

/// Gaussian random-walk proposal on vectors. Symmetric; density omitted.
MarkovKernel<Vector> gaussian_random_walk_vec(double step_size);

}  // namespace aide

#endif  // AIDE_LINREG_HPP
