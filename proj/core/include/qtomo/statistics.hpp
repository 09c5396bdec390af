#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qtomo {

double chi2_cdf(double x, double dof);
double chi2_quantile(double p, double dof);

struct KsResult {
  double statistic = 0.0;  // sup |F_n - F|
  double p_value = 0.0;
};

/// One-sample Kolmogorov-Smirnov test against a continuous CDF. The p-value uses
/// the Kolmogorov limit law with Stephens' finite-sample correction.
KsResult ks_test(std::span<const double> sample, const std::function<double(double)>& cdf);

/// P(K > x) for the Kolmogorov distribution.
double kolmogorov_survival(double x);

struct GofResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 0.0;
};

/// Pearson chi-square goodness of fit; bins with expected < min_expected are pooled
/// into their neighbour. dof = bins - 1 - fitted_params.
GofResult chi2_goodness_of_fit(std::span<const double> observed, std::span<const double> expected,
                               int fitted_params = 0, double min_expected = 5.0);

struct BetaFit {
  double a = 0.0;
  double b = 0.0;
  double ks_p = 0.0;  // KS p-value of the data against the fitted law
};

/// Method-of-moments beta fit for a sample in (0, 1).
BetaFit fit_beta(std::span<const double> sample);
double beta_cdf(double x, double a, double b);

struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> edges;   // bins + 1
  std::vector<long> counts;
};

Histogram histogram(std::span<const double> sample, int bins, double lo, double hi);

double mean(std::span<const double> v);
/// Sample standard deviation (n - 1); 0 for fewer than two values.
double stddev(std::span<const double> v);
double median(std::span<const double> v);

}  // namespace qtomo
