#include "ricsel/fit.hpp"

#include <cmath>
#include <functional>

namespace ricsel {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

double residual_loglik_from_pieces(Index n, int k, const ProjectorPieces& pieces,
                                   double logdet_w, double sigma2) {
  const double df = static_cast<double>(n - k);
  return -0.5 * df * kLog2Pi + 0.5 * pieces.logdet_xx - 0.5 * df * std::log(sigma2) -
         0.5 * logdet_w - 0.5 * pieces.logdet_xwx - 0.5 * pieces.q / sigma2;
}

void check_feasible(const Dataset& data, const CandidateModel& model) {
  if (!model.active.empty() && model.active.back() > data.p()) {
    throw dimension_error("model index exceeds design width");
  }
  if (data.n() - model.k() < 1) {
    throw dimension_error("model leaves no residual degrees of freedom");
  }
}

}  // namespace

GlsFit gls_fit(const Dataset& data, const CandidateModel& model,
               const SpdFactor& w_factor) {
  check_feasible(data, model);
  GlsPieces gp = gls_pieces(data, model, w_factor);
  const double y_scale = std::max(1.0, data.y.dot(w_factor.solve(data.y)));
  if (gp.pieces.q <= 1e-12 * y_scale) {
    throw perfect_fit_error("model " + model.describe() +
                            " fits exactly; variance estimate degenerate");
  }
  GlsFit fit;
  fit.beta_hat = std::move(gp.beta_hat);
  fit.pieces = gp.pieces;
  fit.sigma2_reml = gp.pieces.q / static_cast<double>(data.n() - model.k());
  fit.sigma2_mle = gp.pieces.q / static_cast<double>(data.n());
  return fit;
}

double residual_loglik(const Dataset& data, const CandidateModel& model,
                       const CorrelationSpec& spec, double sigma2) {
  if (!(sigma2 > 0.0)) {
    throw domain_error("sigma2 must be positive");
  }
  check_feasible(data, model);
  const SpdFactor w_factor = correlation_factor(spec, data.n());
  const ProjectorPieces pieces = projector_pieces(data, model, w_factor);
  return residual_loglik_from_pieces(data.n(), model.k(), pieces, w_factor.log_det(),
                                     sigma2);
}

double full_loglik(const Dataset& data, const Vector& beta,
                   const CorrelationSpec& spec, double sigma2) {
  if (!(sigma2 > 0.0)) {
    throw domain_error("sigma2 must be positive");
  }
  if (beta.size() != data.p()) {
    throw dimension_error("beta length does not match design width");
  }
  const SpdFactor w_factor = correlation_factor(spec, data.n());
  const Vector r = data.y - data.X * beta;
  const double quad = r.dot(w_factor.solve(r));
  return -0.5 * (static_cast<double>(data.n()) * (kLog2Pi + std::log(sigma2)) +
                 w_factor.log_det() + quad / sigma2);
}

namespace detail {

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double tol, int max_iter) {
  constexpr double invphi = 0.6180339887498948482045868343656;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

double profiled_resid_loglik(const Dataset& data, const CandidateModel& model,
                             const CorrelationSpec& spec) {
  const SpdFactor w_factor = correlation_factor(spec, data.n());
  const ProjectorPieces pieces = projector_pieces(data, model, w_factor);
  const double sigma2 = pieces.q / static_cast<double>(data.n() - model.k());
  if (!(sigma2 > 0.0)) {
    throw perfect_fit_error("model " + model.describe() + " fits exactly");
  }
  return residual_loglik_from_pieces(data.n(), model.k(), pieces, w_factor.log_det(),
                                     sigma2);
}

}  // namespace detail

FittedModel profile_reml(const Dataset& data, const CandidateModel& model,
                         CorrelationFamily family) {
  check_feasible(data, model);
  if (data.n() - model.k() < 3) {
    throw dimension_error("profile REML requires n - k >= 3");
  }

  CorrelationSpec spec;
  spec.family = family;
  bool boundary = false;
  if (family != CorrelationFamily::Identity) {
    const double lo = family == CorrelationFamily::Ar1
                          ? -0.99
                          : -1.0 / static_cast<double>(data.n() - 1) + 0.01;
    const double hi = 0.99;
    if (lo >= hi) {
      throw invalid_correlation_error("empty search interval for " +
                                      family_name(family));
    }
    const auto objective = [&](double theta) {
      CorrelationSpec s = family == CorrelationFamily::Ar1
                              ? CorrelationSpec::ar1(theta)
                              : CorrelationSpec::exchangeable(theta);
      return detail::profiled_resid_loglik(data, model, s);
    };
    const double theta_hat =
        detail::golden_section_max(objective, lo, hi, 1e-8, 200);
    boundary = theta_hat - lo < 1e-6 || hi - theta_hat < 1e-6;
    spec = family == CorrelationFamily::Ar1 ? CorrelationSpec::ar1(theta_hat)
                                            : CorrelationSpec::exchangeable(theta_hat);
  }

  const SpdFactor w_factor = correlation_factor(spec, data.n());
  GlsFit gls = gls_fit(data, model, w_factor);

  FittedModel fit;
  fit.model = model;
  fit.beta_hat = std::move(gls.beta_hat);
  fit.theta_hat = spec.theta;
  fit.family = family;
  fit.sigma2_reml = gls.sigma2_reml;
  fit.sigma2_mle = gls.sigma2_mle;
  fit.q = gls.pieces.q;
  fit.logdet_w = w_factor.log_det();
  fit.logdet_xwx = gls.pieces.logdet_xwx;
  fit.logdet_xx = gls.pieces.logdet_xx;
  fit.n = data.n();
  fit.boundary_warning = boundary;
  fit.resid_loglik = residual_loglik_from_pieces(
      data.n(), model.k(), gls.pieces, fit.logdet_w, fit.sigma2_reml);
  return fit;
}

}  // namespace ricsel
