// Statistical machinery: Kolmogorov-Smirnov tests, power-tail slope
// estimation on order statistics, and Monte Carlo transform estimates.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "heavytail/analytics.hpp"

namespace heavytail::stats {

struct KsResult {
  double statistic = 0.0;  // sup-distance between the two CDFs
  double critical = 0.0;   // rejection threshold at level `alpha`
  double alpha = 0.0;      // significance level used
  bool reject = false;     // statistic > critical
  std::size_t n1 = 0;
  std::size_t n2 = 0;  // 0 for the one-sample test
};

// Asymptotic two-sided Kolmogorov critical coefficient
// c(alpha) = sqrt(-ln(alpha/2) / 2); the two-sample threshold is
// c(alpha) * sqrt((m+n)/(m n)), the one-sample one c(alpha)/sqrt(n).
double ks_critical_coefficient(double alpha);

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b,
                       double alpha);

KsResult ks_one_sample(std::vector<double> a,
                       const std::function<double(double)>& cdf,
                       double alpha);

struct TailEstimate {
  double exponent = 0.0;  // -slope of log survival vs log threshold
  double constant = 0.0;  // exp(intercept)
  double slope_se = 0.0;  // OLS slope standard error (indicative: the
                          // order-statistic residuals are correlated)
  std::size_t points = 0;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

// Least-squares fit of log empirical survival against log threshold over
// the order-statistic rank window [window_lo, window_hi), subsampled to
// at most `points` evenly spaced ranks.  The sample is used as given:
// callers fold symmetric samples to |x| first.  All thresholds in the
// window must be positive.
TailEstimate tail_slope(std::vector<double> sample, double window_lo = 0.99,
                        double window_hi = 0.9999, int points = 400);

struct TransformEstimate {
  std::complex<double> estimate;
  double se_real = 0.0;
  double se_imag = 0.0;
  std::size_t n = 0;
};

// Monte Carlo estimate of E[exp(-s X)] (Laplace) or E[exp(i t X)]
// (CharFn) with per-component standard errors.
TransformEstimate mc_transform(const std::vector<double>& sample,
                               TransformKind kind, double arg);

}  // namespace heavytail::stats
