#ifndef RICSEL_FIT_HPP
#define RICSEL_FIT_HPP

#include <functional>
#include <optional>

#include "ricsel/linalg.hpp"
#include "ricsel/types.hpp"

namespace ricsel {

/// GLS/REML fit of one candidate model.
struct FittedModel {
  CandidateModel model;
  Vector beta_hat;          // length k
  Vector theta_hat;         // length m (empty for identity family)
  CorrelationFamily family = CorrelationFamily::Identity;
  double sigma2_reml = 0.0;  // q / (n - k)
  double sigma2_mle = 0.0;   // q / n
  double q = 0.0;
  double logdet_w = 0.0;
  double logdet_xwx = 0.0;
  double logdet_xx = 0.0;
  double resid_loglik = 0.0;
  Index n = 0;
  bool boundary_warning = false;  // theta_hat within 1e-6 of the search edge

  CorrelationSpec correlation() const { return {family, theta_hat}; }
};

/// GLS estimation at a fixed, known W.
struct GlsFit {
  Vector beta_hat;
  double sigma2_reml;
  double sigma2_mle;
  ProjectorPieces pieces;
};

GlsFit gls_fit(const Dataset& data, const CandidateModel& model,
               const SpdFactor& w_factor);

/// Residual (restricted) log-likelihood with every constant retained:
///   -(n-k)/2 log(2*pi) + 1/2 log|X_A'X_A| - (n-k)/2 log(sigma2)
///   - 1/2 log|W| - 1/2 log|X_A'W^-1 X_A| - q / (2 sigma2).
double residual_loglik(const Dataset& data, const CandidateModel& model,
                       const CorrelationSpec& spec, double sigma2);

/// Full Gaussian log-likelihood at given coefficients:
///   -1/2 [ n log(2*pi*sigma2) + log|W| + (y-Xb)'W^-1(y-Xb)/sigma2 ].
double full_loglik(const Dataset& data, const Vector& beta,
                   const CorrelationSpec& spec, double sigma2);

/// Profile-REML fit: maximizes the residual log-likelihood over theta with
/// sigma2 profiled out as q(theta)/(n-k). Golden-section search on the
/// clipped validity interval; exact for the identity family.
FittedModel profile_reml(const Dataset& data, const CandidateModel& model,
                         CorrelationFamily family);

namespace detail {

/// Golden-section maximization of a unimodal scalar function on [lo, hi].
/// Returns the abscissa; tolerance is on the interval width.
double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double tol, int max_iter);

/// Profiled residual log-likelihood at theta (sigma2 = q/(n-k)).
double profiled_resid_loglik(const Dataset& data, const CandidateModel& model,
                             const CorrelationSpec& spec);

}  // namespace detail

}  // namespace ricsel

#endif  // RICSEL_FIT_HPP
