#ifndef RICSEL_SIMULATE_HPP
#define RICSEL_SIMULATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ricsel/selection.hpp"
#include "ricsel/stats.hpp"
#include "ricsel/types.hpp"

namespace ricsel {

/// Truth for a simulation: the design is regenerated per sample size from
/// a design seed derived from `seed`, so only the coefficient/correlation
/// part is fixed here.
struct SimTruth {
  Vector beta0;
  double sigma0_sq = 1.0;
  CorrelationSpec correlation;
  bool intercept = false;  // first design column all ones
};

struct ExperimentConfig {
  SimTruth truth;
  std::vector<Index> n_values;
  int replications = 0;
  std::vector<CriterionKind> criteria;
  CorrelationFamily fit_family = CorrelationFamily::Identity;
  std::uint64_t seed = 0;
  std::vector<int> forced;
  int max_k = 0;  // 0 means p

  void validate() const;  // throws domain_error on bad fields
};

struct RateRow {
  Index n = 0;
  CriterionKind kind = CriterionKind::RIC;
  double true_rate = 0.0;
  double full_rate = 0.0;
  double overfit_rate = 0.0;   // strict superset of the true active set
  double underfit_rate = 0.0;  // misses at least one active index
  double failed_rate = 0.0;    // no feasible candidate in a replication
  double mean_selected_k = 0.0;
};

struct IdentityRow {
  std::string name;
  double target = 0.0;
  double mc_mean = 0.0;
  double std_error = 0.0;
  bool flagged = false;  // target outside mean +/- 3 SE
};

struct KsRow {
  std::string name;
  double statistic = 0.0;
  double p_value = 0.0;
};

struct ExperimentSummary {
  std::vector<RateRow> rates;
  std::vector<IdentityRow> identities;
  std::vector<KsRow> ks_checks;
};

/// Gaussian design: iid standard normal columns (first column forced to
/// ones when `intercept`), fixed by the design seed alone.
Matrix gaussian_design(Index n, Index p, std::uint64_t design_seed, bool intercept);

/// One simulated dataset: y = X beta0 + L z with L the factor of
/// sigma0^2 W(theta0). Bit-identical for identical (seed, replication).
Dataset sample_dgp(const TrueModelSpec& truth, Index n, std::uint64_t seed,
                   std::uint64_t replication);

/// Selection-rate experiment over the config's n values.
ExperimentSummary run_experiment(const ExperimentConfig& config);

/// Monte-Carlo verification of the moment identities and the chi-squared/F
/// distribution claims, fitting a fixed superset model at known W = W0.
/// Uses n_values[0] and a fitting model of k covariates where
/// k = max_k (or p when max_k == 0).
ExperimentSummary verify_identities(const ExperimentConfig& config);

/// Worker count: min(RIC_SELECT_THREADS, hardware concurrency), at least 1.
int worker_count();

/// Deterministic parallel map: body(i) for i in [0, count), results ordered.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace ricsel

#endif  // RICSEL_SIMULATE_HPP
