#ifndef RICSEL_CRITERIA_HPP
#define RICSEL_CRITERIA_HPP

#include <array>
#include <string>
#include <vector>

#include "ricsel/fit.hpp"

namespace ricsel {

enum class CriterionKind { RIC, RIC_STAR, RICC, AIC, AICC, BIC };

inline constexpr std::array<CriterionKind, 6> kAllCriteria = {
    CriterionKind::RIC,  CriterionKind::RIC_STAR, CriterionKind::RICC,
    CriterionKind::AIC,  CriterionKind::AICC,     CriterionKind::BIC};

std::string criterion_name(CriterionKind kind);
CriterionKind criterion_from_name(const std::string& name);

/// Evaluate one criterion on a fitted model; lower is better.
///
///   RIC   = (n-k) log s2_reml + log|W| + k log n - k + 4/(n-k-2)
///   RIC*  = (n-k) log s2_reml + log|W| - k + 4/(n-k-2)
///   RICc  = n log s2_reml + log|W| + k + 4(k+1)/(n-k-2)
///   AIC   = n log s2_mle + log|W| + 2k
///   AICc  = n log s2_mle + log|W| + 2n(k+1)/(n-k-2)
///   BIC   = n log s2_mle + log|W| + k log n
///
/// The log|W| term vanishes for the identity family; including it for all
/// six keeps criteria comparable under estimated correlation.
double evaluate_criterion(const FittedModel& fit, CriterionKind kind, Index n);

/// Complexity penalties of the criteria whose goodness term decomposes as
/// n log(RSS): criterion value = n log(RSS) + penalty.
struct PenaltyTable {
  Index n = 0;
  int k = 0;
  double ricc = 0.0;  // -n log(n-k) + k + 4(k+1)/(n-k-2)
  double aic = 0.0;   // -n log(n)   + 2k
  double aicc = 0.0;  // -n log(n)   + 2n(k+1)/(n-k-2)

  double value(CriterionKind kind, double rss) const;
};

PenaltyTable penalty_decomposition(Index n, int k);

}  // namespace ricsel

#endif  // RICSEL_CRITERIA_HPP
