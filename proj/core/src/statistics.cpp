#include "qtomo/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include "qtomo/types.hpp"

namespace qtomo {

double chi2_cdf(double x, double dof) {
  if (x <= 0.0) return 0.0;
  return boost::math::cdf(boost::math::chi_squared(dof), x);
}

double chi2_quantile(double p, double dof) {
  return boost::math::quantile(boost::math::chi_squared(dof), p);
}

double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 1.18) {
    // Theta-function form converges fast for small x.
    const double y = std::exp(-kPi * kPi / (8.0 * x * x));
    const double c = std::sqrt(2.0 * kPi) / x;
    double s = 0.0;
    for (int k = 1; k <= 7; k += 2) s += std::pow(y, k * k);
    return std::clamp(1.0 - c * s, 0.0, 1.0);
  }
  double s = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    s += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(s, 0.0, 1.0);
}

KsResult ks_test(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw InvalidArgumentError("KS test needs a nonempty sample");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  const double sn = std::sqrt(n);
  return {d, kolmogorov_survival((sn + 0.12 + 0.11 / sn) * d)};
}

GofResult chi2_goodness_of_fit(std::span<const double> observed, std::span<const double> expected,
                               int fitted_params, double min_expected) {
  if (observed.size() != expected.size() || observed.empty()) {
    throw InvalidArgumentError("observed and expected bins must have equal nonzero length");
  }
  std::vector<double> o, e;
  double acc_o = 0.0, acc_e = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    acc_o += observed[i];
    acc_e += expected[i];
    if (acc_e >= min_expected) {
      o.push_back(acc_o);
      e.push_back(acc_e);
      acc_o = acc_e = 0.0;
    }
  }
  if (acc_e > 0.0 || acc_o > 0.0) {
    if (e.empty()) {
      o.push_back(acc_o);
      e.push_back(acc_e);
    } else {
      o.back() += acc_o;
      e.back() += acc_e;
    }
  }
  GofResult r;
  for (std::size_t i = 0; i < o.size(); ++i) r.statistic += (o[i] - e[i]) * (o[i] - e[i]) / e[i];
  r.dof = static_cast<int>(o.size()) - 1 - fitted_params;
  r.p_value = r.dof > 0 ? 1.0 - chi2_cdf(r.statistic, r.dof) : std::nan("");
  return r;
}

double beta_cdf(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::cdf(boost::math::beta_distribution<double>(a, b), x);
}

BetaFit fit_beta(std::span<const double> sample) {
  if (sample.size() < 2) throw InvalidArgumentError("beta fit needs at least two values");
  const double m = mean(sample);
  const double s = stddev(sample);
  const double v = s * s;
  if (!(m > 0.0 && m < 1.0) || !(v > 0.0) || v >= m * (1.0 - m)) {
    throw InvalidArgumentError("sample moments admit no beta law");
  }
  const double common = m * (1.0 - m) / v - 1.0;
  BetaFit f{m * common, (1.0 - m) * common, 0.0};
  f.ks_p = ks_test(sample, [&](double x) { return beta_cdf(x, f.a, f.b); }).p_value;
  return f;
}

Histogram histogram(std::span<const double> sample, int bins, double lo, double hi) {
  if (bins < 1 || !(hi > lo)) throw InvalidArgumentError("histogram needs bins >= 1 and hi > lo");
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  const double w = (hi - lo) / bins;
  for (int i = 0; i <= bins; ++i) h.edges.push_back(lo + w * i);
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double x : sample) {
    if (x < lo || x > hi) continue;
    int i = std::min(bins - 1, static_cast<int>((x - lo) / w));
    ++h.counts[static_cast<std::size_t>(i)];
  }
  return h;
}

double mean(std::span<const double> v) {
  if (v.empty()) return std::nan("");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double median(std::span<const double> v) {
  if (v.empty()) return std::nan("");
  std::vector<double> x(v.begin(), v.end());
  std::sort(x.begin(), x.end());
  const std::size_t n = x.size();
  return n % 2 ? x[n / 2] : 0.5 * (x[n / 2 - 1] + x[n / 2]);
}

}  // namespace qtomo
