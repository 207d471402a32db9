#include "ricsel/oracle.hpp"

#include <cmath>

#include "ricsel/linalg.hpp"

namespace ricsel {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

struct ProjectorExpectations {
  double bias = 0.0;      // (X b0)'(W^-1 - H_A)(X b0)
  double trace = 0.0;     // tr{(W^-1 - H_A) W0}
  double logdet_xwx = 0.0;
  double logdet_xx = 0.0;
};

// Expectation pieces of y'(W^-1 - H_A)y under the truth, at candidate W.
ProjectorExpectations projector_expectations(const TrueModelSpec& truth,
                                             const CandidateModel& model,
                                             const SpdFactor& w_factor) {
  const Matrix& X = truth.design;
  const Index n = X.rows();
  const Vector mu = X * truth.beta0;
  const Vector wi_mu = w_factor.solve(mu);
  const Matrix W0 = build_correlation(truth.correlation, n);
  const Matrix wi_W0 = w_factor.solve(W0);

  ProjectorExpectations out;
  out.bias = mu.dot(wi_mu);
  out.trace = wi_W0.trace();
  if (model.k() == 0) {
    return out;
  }
  const Matrix Xa = model.design(X);
  const Matrix wi_Xa = w_factor.solve(Xa);
  const Matrix gram_w = Xa.transpose() * wi_Xa;
  const SpdFactor gram_w_factor = spd_factorize(0.5 * (gram_w + gram_w.transpose()));
  const SpdFactor gram_factor = spd_factorize(Matrix(Xa.transpose() * Xa));

  const Vector xtwi_mu = Xa.transpose() * wi_mu;
  out.bias -= xtwi_mu.dot(gram_w_factor.solve(xtwi_mu));
  // tr(H_A W0) = tr(G^-1 B' W0 B) with B = W^-1 X_A.
  const Matrix inner = wi_Xa.transpose() * W0 * wi_Xa;
  out.trace -= gram_w_factor.solve(inner).trace();
  out.logdet_xwx = gram_w_factor.log_det();
  out.logdet_xx = gram_factor.log_det();
  return out;
}

}  // namespace

PopulationScore population_neg2_residual_loglik(const TrueModelSpec& truth,
                                                const CandidateModel& model,
                                                const CorrelationSpec& spec,
                                                double sigma2) {
  if (!(sigma2 > 0.0)) {
    throw domain_error("sigma2 must be positive");
  }
  const Index n = truth.n();
  const int k = model.k();
  if (n - k < 1) {
    throw dimension_error("model leaves no residual degrees of freedom");
  }
  const SpdFactor w_factor = correlation_factor(spec, n);
  const ProjectorExpectations pe = projector_expectations(truth, model, w_factor);
  const double df = static_cast<double>(n - k);

  PopulationScore score;
  score.dim_constant = df * kLog2Pi;
  score.logdet_xx_term = -pe.logdet_xx;
  score.log_sigma2_term = df * std::log(sigma2);
  score.logdet_w_term = w_factor.log_det();
  score.logdet_xwx_term = pe.logdet_xwx;
  score.expected_quad_term = truth.sigma0_sq * pe.trace / sigma2;
  score.bias_term = pe.bias / sigma2;
  score.value = score.dim_constant + score.logdet_xx_term + score.log_sigma2_term +
                score.logdet_w_term + score.logdet_xwx_term +
                score.expected_quad_term + score.bias_term;
  return score;
}

PopulationScore population_neg2_loglik(const TrueModelSpec& truth,
                                       const Vector& beta,
                                       const CorrelationSpec& spec, double sigma2) {
  if (!(sigma2 > 0.0)) {
    throw domain_error("sigma2 must be positive");
  }
  const Index n = truth.n();
  if (beta.size() != truth.p()) {
    throw dimension_error("beta length does not match design width");
  }
  const SpdFactor w_factor = correlation_factor(spec, n);
  const Matrix W0 = build_correlation(truth.correlation, n);
  const Vector delta = truth.design * (beta - truth.beta0);

  PopulationScore score;
  score.dim_constant = static_cast<double>(n) * kLog2Pi;
  score.log_sigma2_term = static_cast<double>(n) * std::log(sigma2);
  score.logdet_w_term = w_factor.log_det();
  score.expected_quad_term = truth.sigma0_sq * w_factor.solve(W0).trace() / sigma2;
  score.bias_term = delta.dot(w_factor.solve(delta)) / sigma2;
  score.value = score.dim_constant + score.log_sigma2_term + score.logdet_w_term +
                score.expected_quad_term + score.bias_term;
  return score;
}

double kl_residual(const TrueModelSpec& truth, const CandidateModel& model,
                   const CorrelationSpec& spec, double sigma2) {
  const PopulationScore candidate =
      population_neg2_residual_loglik(truth, model, spec, sigma2);
  const PopulationScore self = population_neg2_residual_loglik(
      truth, truth.active_set(), truth.correlation, truth.sigma0_sq);
  return candidate.value - self.value;
}

double kl_likelihood(const TrueModelSpec& truth, const Vector& beta,
                     const CorrelationSpec& spec, double sigma2) {
  const PopulationScore candidate = population_neg2_loglik(truth, beta, spec, sigma2);
  const PopulationScore self = population_neg2_loglik(
      truth, truth.beta0, truth.correlation, truth.sigma0_sq);
  return candidate.value - self.value;
}

double estimated_divergence(const TrueModelSpec& truth, const FittedModel& fit) {
  const Index n = truth.n();
  const SpdFactor w_factor =
      correlation_factor(fit.correlation(), n);
  const ProjectorExpectations pe =
      projector_expectations(truth, fit.model, w_factor);
  const double df = static_cast<double>(n - fit.model.k());
  return df * std::log(fit.sigma2_reml) + w_factor.log_det() + pe.logdet_xwx +
         pe.bias / fit.sigma2_reml +
         truth.sigma0_sq * pe.trace / fit.sigma2_reml;
}

ExpectationIdentities expectation_identities(Index n, int k) {
  const double df = static_cast<double>(n) - static_cast<double>(k);
  const double df2 = df - 2.0;
  if (df2 <= 0.0) {
    throw undefined_criterion_error("moment identities undefined at n = " +
                                    std::to_string(n) + ", k = " + std::to_string(k));
  }
  return {df * df / df2, static_cast<double>(k) * df / df2};
}

}  // namespace ricsel
