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

#include "aide/linreg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "aide/errors.hpp"

namespace aide {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

double log_det_from_llt(const Eigen::LLT<Matrix>& llt) {
  double acc = 0.0;
  const auto& l = llt.matrixLLT();
  for (int i = 0; i < l.rows(); ++i) acc += std::log(l(i, i));
  return 2.0 * acc;
}

Eigen::LLT<Matrix> checked_llt(const Matrix& m, const char* what) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success)
    throw NumericalError(std::string(what) + ": matrix is not positive definite");
  return llt;
}

}  // namespace

GaussianDensity::GaussianDensity(Vector mean, Matrix covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  if (covariance_.rows() != covariance_.cols() ||
      covariance_.rows() != mean_.size())
    throw std::invalid_argument("GaussianDensity: dimension mismatch");
  covariance_llt_ = checked_llt(covariance_, "GaussianDensity");
  const int d = static_cast<int>(mean_.size());
  log_norm_const_ =
      -0.5 * (d * kLog2Pi + log_det_from_llt(covariance_llt_));
}

double GaussianDensity::log_density(const Vector& x) const {
  if (x.size() != mean_.size())
    throw std::invalid_argument("GaussianDensity: dimension mismatch");
  const Vector centered = x - mean_;
  // Solve L z = centered; quad form is |z|^2.
  const Vector z = covariance_llt_.matrixL().solve(centered);
  return log_norm_const_ - 0.5 * z.squaredNorm();
}

Vector GaussianDensity::sample(RandomStream& rng) const {
  Vector z(mean_.size());
  for (int i = 0; i < z.size(); ++i) z(i) = rng.normal();
  return mean_ + covariance_llt_.matrixL() * z;
}

Distribution<Vector> GaussianDensity::as_distribution() const {
  GaussianDensity self = *this;
  Distribution<Vector> dist;
  dist.sample = [self](RandomStream& rng) { return self.sample(rng); };
  dist.log_density = [self](const Vector& x) { return self.log_density(x); };
  return dist;
}

void ConjugateLinReg::validate() const {
  if (prior_precision.rows() != dim() || prior_precision.cols() != dim())
    throw std::invalid_argument("ConjugateLinReg: prior precision shape");
  if (!prior_precision.isApprox(prior_precision.transpose(), 1e-12))
    throw std::invalid_argument("ConjugateLinReg: prior precision not symmetric");
  if (!(noise_variance > 0.0))
    throw std::invalid_argument("ConjugateLinReg: noise variance must be > 0");
  if (design.rows() != response.size())
    throw std::invalid_argument("ConjugateLinReg: design/response row mismatch");
  if (design.rows() > 0 && design.cols() != dim())
    throw std::invalid_argument("ConjugateLinReg: design column count != dim");
  checked_llt(prior_precision, "ConjugateLinReg prior precision");
}

namespace {

double linreg_log_joint(const ConjugateLinReg& model, double prior_log_det,
                        const Vector& x) {
  if (x.size() != model.dim())
    throw std::invalid_argument("ConjugateLinReg::log_joint: dimension mismatch");
  const Vector centered = x - model.prior_mean;
  double acc = -0.5 * (model.dim() * kLog2Pi - prior_log_det) -
               0.5 * centered.dot(model.prior_precision * centered);
  if (model.n_data() > 0) {
    const Vector residual = model.response - model.design * x;
    acc += -0.5 * (model.n_data() * (kLog2Pi + std::log(model.noise_variance))) -
           0.5 * residual.squaredNorm() / model.noise_variance;
  }
  return acc;
}

}  // namespace

double ConjugateLinReg::log_joint(const Vector& x) const {
  const Eigen::LLT<Matrix> prior_llt = checked_llt(prior_precision, "log_joint");
  return linreg_log_joint(*this, log_det_from_llt(prior_llt), x);
}

LinRegPosterior linreg_posterior(const ConjugateLinReg& model) {
  model.validate();
  const int d = model.dim();
  const int n = model.n_data();
  Matrix posterior_precision = model.prior_precision;
  Vector rhs = model.prior_precision * model.prior_mean;
  if (n > 0) {
    posterior_precision +=
        model.design.transpose() * model.design / model.noise_variance;
    rhs += model.design.transpose() * model.response / model.noise_variance;
  }
  const Eigen::LLT<Matrix> post_llt =
      checked_llt(posterior_precision, "linreg_posterior");
  LinRegPosterior out;
  out.mean = post_llt.solve(rhs);
  out.covariance = post_llt.solve(Matrix::Identity(d, d));
  // Symmetrize against roundoff.
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();

  // Evidence via log p(y) = log p(x, y) - log p(x | y) evaluated at the
  // posterior mean, with log determinants from the Cholesky factors.
  const Eigen::LLT<Matrix> prior_llt =
      checked_llt(model.prior_precision, "linreg_posterior prior");
  const Vector dm = out.mean - model.prior_mean;
  double acc = 0.5 * log_det_from_llt(prior_llt) -
               0.5 * log_det_from_llt(post_llt) -
               0.5 * dm.dot(model.prior_precision * dm);
  if (n > 0) {
    const Vector residual = model.response - model.design * out.mean;
    acc += -0.5 * (n * (kLog2Pi + std::log(model.noise_variance))) -
           0.5 * residual.squaredNorm() / model.noise_variance;
  }
  out.log_marginal = acc;
  return out;
}

Model<Vector> make_linreg_model(const ConjugateLinReg& model) {
  const LinRegPosterior post = linreg_posterior(model);
  GaussianDensity posterior(post.mean, post.covariance);
  Model<Vector> posed;
  ConjugateLinReg captured = model;
  const double prior_log_det =
      log_det_from_llt(checked_llt(model.prior_precision, "make_linreg_model"));
  posed.log_joint = [captured, prior_log_det](const Vector& x) {
    return linreg_log_joint(captured, prior_log_det, x);
  };
  posed.exact_log_marginal = post.log_marginal;
  posed.exact_posterior = posterior.as_distribution();
  return posed;
}

double DiagonalGaussian::log_density(const Vector& x) const {
  if (x.size() != mean.size())
    throw std::invalid_argument("DiagonalGaussian: dimension mismatch");
  double acc = 0.0;
  for (int i = 0; i < mean.size(); ++i) {
    const double centered = x(i) - mean(i);
    acc += -0.5 * (kLog2Pi + std::log(variances(i))) -
           0.5 * centered * centered / variances(i);
  }
  return acc;
}

Vector DiagonalGaussian::sample_at(RandomStream& rng) const {
  Vector out(mean.size());
  for (int i = 0; i < mean.size(); ++i)
    out(i) = mean(i) + std::sqrt(variances(i)) * rng.normal();
  return out;
}

Distribution<Vector> DiagonalGaussian::as_distribution() const {
  DiagonalGaussian self = *this;
  Distribution<Vector> dist;
  dist.sample = [self](RandomStream& rng) { return self.sample_at(rng); };
  dist.log_density = [self](const Vector& x) { return self.log_density(x); };
  return dist;
}

DiagonalGaussian fit_meanfield_gaussian(const Vector& posterior_mean,
                                        const Matrix& posterior_cov) {
  const Eigen::LLT<Matrix> cov_llt =
      checked_llt(posterior_cov, "fit_meanfield_gaussian");
  const Matrix precision =
      cov_llt.solve(Matrix::Identity(posterior_cov.rows(), posterior_cov.cols()));
  DiagonalGaussian out;
  out.mean = posterior_mean;
  out.variances = Vector(posterior_mean.size());
  for (int i = 0; i < posterior_mean.size(); ++i)
    out.variances(i) = 1.0 / precision(i, i);
  return out;
}

MarkovKernel<Vector> gaussian_random_walk_vec(double step_size) {
  if (!(step_size > 0.0))
    throw std::invalid_argument("gaussian_random_walk_vec: step_size must be > 0");
  MarkovKernel<Vector> kernel;
  kernel.sample = [step_size](const Vector& x, RandomStream& rng) {
    Vector out = x;
    for (int i = 0; i < out.size(); ++i) out(i) += step_size * rng.normal();
    return out;
  };
  return kernel;
}

}  // namespace aide
