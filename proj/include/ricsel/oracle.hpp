#ifndef RICSEL_ORACLE_HPP
#define RICSEL_ORACLE_HPP

#include "ricsel/fit.hpp"
#include "ricsel/types.hpp"

namespace ricsel {

/// An exact expectation E0[-2L] with its term-by-term breakdown.
/// All constants are retained, including the (n-k) log(2*pi) block and the
/// -log|X_A'X_A| term that displayed criteria drop.
struct PopulationScore {
  double value = 0.0;
  double dim_constant = 0.0;      // (n-k) log(2*pi)  (or n log(2*pi))
  double logdet_xx_term = 0.0;    // -log|X_A'X_A|    (residual only)
  double log_sigma2_term = 0.0;   // (n-k) log sigma2 (or n log sigma2)
  double logdet_w_term = 0.0;     // log|W|
  double logdet_xwx_term = 0.0;   // log|X_A'W^-1 X_A| (residual only)
  double expected_quad_term = 0.0;  // sigma0^2 tr{(W^-1 - H_A) W0} / sigma2
  double bias_term = 0.0;           // (X b0)'(W^-1 - H_A)(X b0) / sigma2
};

/// Exact E0[-2 * residual_loglik] of a candidate (model, W(theta), sigma2)
/// under the truth.
PopulationScore population_neg2_residual_loglik(const TrueModelSpec& truth,
                                                const CandidateModel& model,
                                                const CorrelationSpec& spec,
                                                double sigma2);

/// Exact E0[-2 * full_loglik] of candidate parameters (beta, W(theta), sigma2).
PopulationScore population_neg2_loglik(const TrueModelSpec& truth,
                                       const Vector& beta,
                                       const CorrelationSpec& spec,
                                       double sigma2);

/// KL-style divergence between residual likelihoods:
/// population_neg2_residual_loglik(candidate) minus the truth's own score.
/// May be negative for strict supersets of the true active set; that is the
/// residual-likelihood pathology, not an error.
double kl_residual(const TrueModelSpec& truth, const CandidateModel& model,
                   const CorrelationSpec& spec, double sigma2);

/// Gaussian KL divergence (times 2) between the candidate (beta, W, sigma2)
/// and the truth. Nonnegative; zero iff the candidate matches the truth.
double kl_likelihood(const TrueModelSpec& truth, const Vector& beta,
                     const CorrelationSpec& spec, double sigma2);

/// Plug-in divergence with estimated parameters:
///   (n-k) log s2 + log|W^| + log|X_A'W^-1 X_A|
///   + (X b0)'(W^-1 - H_A)(X b0)/s2 + tr{(W^-1 - H_A) W0} sigma0^2 / s2,
/// evaluated at the fit's theta_hat and sigma2_reml. Constants and the
/// log|X_A'X_A| term are dropped here, unlike the population scores.
double estimated_divergence(const TrueModelSpec& truth, const FittedModel& fit);

/// Closed-form moments under a correctly specified superset model:
///   chi2_ratio_mean = E[(n-k) sigma0^2 / s2_reml] = (n-k)^2 / (n-k-2)
///   quadform_mean   = E[(Xb^-Xb0)'W^-1(Xb^-Xb0) / s2_reml] = k(n-k)/(n-k-2)
struct ExpectationIdentities {
  double chi2_ratio_mean = 0.0;
  double quadform_mean = 0.0;
};

ExpectationIdentities expectation_identities(Index n, int k);

}  // namespace ricsel

#endif  // RICSEL_ORACLE_HPP
