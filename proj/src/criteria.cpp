#include "ricsel/criteria.hpp"

#include <cmath>

namespace ricsel {

std::string criterion_name(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::RIC: return "ric";
    case CriterionKind::RIC_STAR: return "ric_star";
    case CriterionKind::RICC: return "ricc";
    case CriterionKind::AIC: return "aic";
    case CriterionKind::AICC: return "aicc";
    case CriterionKind::BIC: return "bic";
  }
  throw dimension_error("unknown criterion kind");
}

CriterionKind criterion_from_name(const std::string& name) {
  if (name == "ric") return CriterionKind::RIC;
  if (name == "ric_star" || name == "ric*") return CriterionKind::RIC_STAR;
  if (name == "ricc") return CriterionKind::RICC;
  if (name == "aic") return CriterionKind::AIC;
  if (name == "aicc") return CriterionKind::AICC;
  if (name == "bic") return CriterionKind::BIC;
  throw parse_error("unknown criterion: " + name);
}

double evaluate_criterion(const FittedModel& fit, CriterionKind kind, Index n) {
  const int k = fit.model.k();
  const double nn = static_cast<double>(n);
  const double df = nn - static_cast<double>(k);
  const double df2 = df - 2.0;
  const bool needs_df2 = kind == CriterionKind::RIC || kind == CriterionKind::RIC_STAR ||
                         kind == CriterionKind::RICC || kind == CriterionKind::AICC;
  if (needs_df2 && df2 <= 0.0) {
    throw undefined_criterion_error(criterion_name(kind) + " undefined at n = " +
                                    std::to_string(n) + ", k = " + std::to_string(k) +
                                    " (n - k - 2 <= 0)");
  }
  if (df < 1.0) {
    throw undefined_criterion_error(criterion_name(kind) +
                                    " undefined with no residual degrees of freedom");
  }
  switch (kind) {
    case CriterionKind::RIC:
      return df * std::log(fit.sigma2_reml) + fit.logdet_w + k * std::log(nn) - k +
             4.0 / df2;
    case CriterionKind::RIC_STAR:
      return df * std::log(fit.sigma2_reml) + fit.logdet_w - k + 4.0 / df2;
    case CriterionKind::RICC:
      return nn * std::log(fit.sigma2_reml) + fit.logdet_w + k +
             4.0 * (k + 1) / df2;
    case CriterionKind::AIC:
      return nn * std::log(fit.sigma2_mle) + fit.logdet_w + 2.0 * k;
    case CriterionKind::AICC:
      return nn * std::log(fit.sigma2_mle) + fit.logdet_w + 2.0 * nn * (k + 1) / df2;
    case CriterionKind::BIC:
      return nn * std::log(fit.sigma2_mle) + fit.logdet_w + k * std::log(nn);
  }
  throw dimension_error("unknown criterion kind");
}

double PenaltyTable::value(CriterionKind kind, double rss) const {
  const double goodness = static_cast<double>(n) * std::log(rss);
  switch (kind) {
    case CriterionKind::RICC: return goodness + ricc;
    case CriterionKind::AIC: return goodness + aic;
    case CriterionKind::AICC: return goodness + aicc;
    default:
      throw undefined_criterion_error(criterion_name(kind) +
                                      " has no n*log(RSS) decomposition");
  }
}

PenaltyTable penalty_decomposition(Index n, int k) {
  const double nn = static_cast<double>(n);
  const double df = nn - static_cast<double>(k);
  const double df2 = df - 2.0;
  if (df2 <= 0.0) {
    throw undefined_criterion_error("penalty decomposition undefined at n = " +
                                    std::to_string(n) + ", k = " + std::to_string(k));
  }
  PenaltyTable table;
  table.n = n;
  table.k = k;
  table.ricc = -nn * std::log(df) + k + 4.0 * (k + 1) / df2;
  table.aic = -nn * std::log(nn) + 2.0 * k;
  table.aicc = -nn * std::log(nn) + 2.0 * nn * (k + 1) / df2;
  return table;
}

}  // namespace ricsel
