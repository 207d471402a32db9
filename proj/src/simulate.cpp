#include "ricsel/simulate.hpp"

#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "ricsel/fit.hpp"
#include "ricsel/linalg.hpp"
#include "ricsel/oracle.hpp"
#include "ricsel/rng.hpp"

namespace ricsel {

namespace {

// Stream ids keeping design, noise, and any future draws disjoint.
constexpr std::uint64_t kDesignStream = 0xD351671ull;
constexpr std::uint64_t kNoiseStream = 0x70153ull;

int effective_max_k(const ExperimentConfig& config) {
  const int p = static_cast<int>(config.truth.beta0.size());
  return config.max_k == 0 ? p : config.max_k;
}

std::uint64_t design_seed(std::uint64_t seed, Index n) {
  // One design per (seed, n); replications share it.
  return seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(n));
}

}  // namespace

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("RIC_SELECT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw domain_error("RIC_SELECT_THREADS must be a positive integer");
    }
    return static_cast<int>(std::min<long>(v, hw));
  }
  return hw;
}

void parallel_for(int count, const std::function<void(int)>& body) {
  const int workers = std::min(worker_count(), std::max(count, 1));
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < count; i += workers) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void ExperimentConfig::validate() const {
  if (replications < 1) {
    throw domain_error("replications must be >= 1");
  }
  if (truth.beta0.size() < 1) {
    throw domain_error("beta0 must be nonempty");
  }
  if (!(truth.sigma0_sq > 0.0)) {
    throw domain_error("sigma0_sq must be positive");
  }
  if (n_values.empty()) {
    throw domain_error("at least one n value required");
  }
  const int max_k = effective_max_k(*this);
  if (max_k < 0 || max_k > static_cast<int>(truth.beta0.size())) {
    throw domain_error("max_k out of range");
  }
  for (Index n : n_values) {
    if (n - max_k - 2 <= 0) {
      throw domain_error("n = " + std::to_string(n) +
                         " too small for max_k = " + std::to_string(max_k));
    }
    if (truth.correlation.family != CorrelationFamily::Identity &&
        !correlation_valid(truth.correlation, n)) {
      throw domain_error("truth correlation invalid at n = " +
                                      std::to_string(n));
    }
  }
}

Matrix gaussian_design(Index n, Index p, std::uint64_t seed, bool intercept) {
  CounterRng rng(seed, 0, kDesignStream);
  Matrix X(n, p);
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < n; ++i) {
      X(i, j) = rng.normal();
    }
  }
  if (intercept && p >= 1) {
    X.col(0).setOnes();
  }
  return X;
}

Dataset sample_dgp(const TrueModelSpec& truth, Index n, std::uint64_t seed,
                   std::uint64_t replication) {
  if (truth.design.rows() < n) {
    throw dimension_error("truth design has fewer than n rows");
  }
  const Matrix X = truth.design.topRows(n);
  const SpdFactor w_factor =
      correlation_factor(truth.correlation, n);

  CounterRng rng(seed, replication, kNoiseStream);
  Vector z(n);
  for (Index i = 0; i < n; ++i) z[i] = rng.normal();

  Vector y = X * truth.beta0 +
             std::sqrt(truth.sigma0_sq) * w_factor.apply_lower(z);
  return Dataset(std::move(y), X);
}

ExperimentSummary run_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.criteria.empty()) {
    throw domain_error("experiment requires at least one criterion");
  }
  const Index p = config.truth.beta0.size();
  const int max_k = effective_max_k(config);
  const std::vector<CandidateModel> candidates =
      enumerate_candidates(static_cast<int>(p), config.forced, max_k);

  ExperimentSummary summary;
  for (Index n : config.n_values) {
    const Matrix design =
        gaussian_design(n, p, design_seed(config.seed, n), config.truth.intercept);
    const TrueModelSpec truth(config.truth.beta0, config.truth.sigma0_sq,
                              config.truth.correlation, design);
    const CandidateModel truth_set = truth.active_set();

    // Selected candidate index per (replication, criterion); -1 marks a
    // replication where every candidate was infeasible for that criterion.
    const int reps = config.replications;
    const int nkinds = static_cast<int>(config.criteria.size());
    std::vector<int> picks(static_cast<std::size_t>(reps) * nkinds, -1);

    parallel_for(reps, [&](int r) {
      Dataset data = sample_dgp(truth, n, config.seed,
                                static_cast<std::uint64_t>(r));
      try {
        SelectionReport report =
            select(data, config.fit_family, candidates, config.criteria);
        for (int c = 0; c < nkinds; ++c) {
          const Winner& w = report.winner(config.criteria[static_cast<std::size_t>(c)]);
          for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
            if (candidates[idx] == w.model) {
              picks[static_cast<std::size_t>(r) * nkinds + c] =
                  static_cast<int>(idx);
              break;
            }
          }
        }
      } catch (const empty_winner_error&) {
        // leave this replication's picks at -1
      } catch (const error& e) {
        throw experiment_error("replication " + std::to_string(r) + ": " + e.what());
      }
    });

    for (int c = 0; c < nkinds; ++c) {
      RateRow row;
      row.n = n;
      row.kind = config.criteria[static_cast<std::size_t>(c)];
      long true_n = 0, full_n = 0, over_n = 0, under_n = 0, failed_n = 0;
      long k_sum = 0;
      for (int r = 0; r < reps; ++r) {
        const int idx = picks[static_cast<std::size_t>(r) * nkinds + c];
        if (idx < 0) {
          ++failed_n;
          continue;
        }
        const CandidateModel& chosen = candidates[static_cast<std::size_t>(idx)];
        k_sum += chosen.k();
        if (chosen.k() == static_cast<int>(p)) ++full_n;
        if (chosen == truth_set) {
          ++true_n;
        } else if (chosen.contains_all(truth_set)) {
          ++over_n;
        } else {
          ++under_n;
        }
      }
      const double denom = static_cast<double>(reps);
      row.true_rate = true_n / denom;
      row.full_rate = full_n / denom;
      row.overfit_rate = over_n / denom;
      row.underfit_rate = under_n / denom;
      row.failed_rate = failed_n / denom;
      row.mean_selected_k =
          reps > failed_n ? static_cast<double>(k_sum) / (denom - failed_n) : 0.0;
      summary.rates.push_back(row);
    }
  }
  return summary;
}

ExperimentSummary verify_identities(const ExperimentConfig& config) {
  config.validate();
  const Index n = config.n_values.front();
  const Index p = config.truth.beta0.size();
  const int k = static_cast<int>(p);  // fit the full model, a superset of A0

  const Matrix design =
      gaussian_design(n, p, design_seed(config.seed, n), config.truth.intercept);
  const TrueModelSpec truth(config.truth.beta0, config.truth.sigma0_sq,
                            config.truth.correlation, design);
  std::vector<int> all(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) all[static_cast<std::size_t>(j)] = static_cast<int>(j) + 1;
  const CandidateModel full_model(all);

  const SpdFactor w_factor =
      correlation_factor(truth.correlation, n);
  const Vector mu = design * truth.beta0;
  const double df = static_cast<double>(n - k);

  const int reps = config.replications;
  std::vector<double> chi_ratio(static_cast<std::size_t>(reps));
  std::vector<double> quadform(static_cast<std::size_t>(reps));
  std::vector<double> chi_stat(static_cast<std::size_t>(reps));
  std::vector<double> f_stat(static_cast<std::size_t>(reps));

  parallel_for(reps, [&](int r) {
    Dataset data = sample_dgp(truth, n, config.seed, static_cast<std::uint64_t>(r));
    GlsFit fit = gls_fit(data, full_model, w_factor);
    const Vector delta = full_model.design(design) * fit.beta_hat - mu;
    const double quad = delta.dot(w_factor.solve(delta)) / fit.sigma2_reml;
    const std::size_t i = static_cast<std::size_t>(r);
    chi_ratio[i] = df * truth.sigma0_sq / fit.sigma2_reml;
    quadform[i] = quad;
    chi_stat[i] = df * fit.sigma2_reml / truth.sigma0_sq;
    f_stat[i] = quad / static_cast<double>(k);
  });

  const ExpectationIdentities targets = expectation_identities(n, k);
  ExperimentSummary summary;
  const auto add_identity = [&](const std::string& name, double target,
                                const std::vector<double>& values) {
    const MeanSe ms = mean_with_se(values);
    IdentityRow row;
    row.name = name;
    row.target = target;
    row.mc_mean = ms.mean;
    row.std_error = ms.std_error;
    row.flagged = std::abs(ms.mean - target) > 3.0 * ms.std_error;
    summary.identities.push_back(row);
  };
  add_identity("chi2_ratio", targets.chi2_ratio_mean, chi_ratio);
  add_identity("gls_quadform", targets.quadform_mean, quadform);

  const KsResult ks_chi = ks_test(chi_stat, [df](double x) {
    return chi_squared_cdf(x, df);
  });
  summary.ks_checks.push_back({"chi2", ks_chi.statistic, ks_chi.p_value});
  const KsResult ks_f = ks_test(f_stat, [k, df](double x) {
    return f_cdf(x, static_cast<double>(k), df);
  });
  summary.ks_checks.push_back({"f", ks_f.statistic, ks_f.p_value});
  return summary;
}

}  // namespace ricsel
