#ifndef RICSEL_STATS_HPP
#define RICSEL_STATS_HPP

#include <functional>
#include <vector>

namespace ricsel {

double chi_squared_cdf(double x, double df);
double f_cdf(double x, double df1, double df2);

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// One-sample Kolmogorov-Smirnov test of `samples` against a continuous CDF.
/// Asymptotic p-value (Stephens' small-sample correction).
KsResult ks_test(std::vector<double> samples,
                 const std::function<double(double)>& cdf);

struct MeanSe {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Sample mean with standard error sd/sqrt(N), summed in index order.
MeanSe mean_with_se(const std::vector<double>& values);

}  // namespace ricsel

#endif  // RICSEL_STATS_HPP
