#include "heavytail/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heavytail::stats {

double ks_critical_coefficient(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("ks: alpha must lie in (0,1)");
  return std::sqrt(-std::log(alpha / 2.0) / 2.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b,
                       double alpha) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::size_t m = a.size(), n = b.size();
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < m && j < n) {
    const double x = std::min(a[i], b[j]);
    while (i < m && a[i] == x) ++i;
    while (j < n && b[j] == x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / m -
                              static_cast<double>(j) / n));
  }
  // Remaining one-sided tail never increases the sup beyond 1 - F already
  // covered by the loop's last step, but finish for completeness.
  d = std::max(d, std::fabs(1.0 - static_cast<double>(j) / n));
  d = std::max(d, std::fabs(static_cast<double>(i) / m - 1.0));

  KsResult r;
  r.statistic = d;
  r.alpha = alpha;
  r.critical = ks_critical_coefficient(alpha) *
               std::sqrt(static_cast<double>(m + n) /
                         (static_cast<double>(m) * static_cast<double>(n)));
  r.reject = r.statistic > r.critical;
  r.n1 = m;
  r.n2 = n;
  return r;
}

KsResult ks_one_sample(std::vector<double> a,
                       const std::function<double(double)>& cdf,
                       double alpha) {
  if (a.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  std::sort(a.begin(), a.end());
  const std::size_t n = a.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(a[i]);
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
  }
  KsResult r;
  r.statistic = d;
  r.alpha = alpha;
  r.critical = ks_critical_coefficient(alpha) / std::sqrt(static_cast<double>(n));
  r.reject = r.statistic > r.critical;
  r.n1 = n;
  r.n2 = 0;
  return r;
}

TailEstimate tail_slope(std::vector<double> sample, double window_lo,
                        double window_hi, int points) {
  const std::size_t n = sample.size();
  if (n < 1000)
    throw std::invalid_argument("tail_slope: need at least 1000 points");
  if (!(0.0 < window_lo && window_lo < window_hi && window_hi < 1.0))
    throw std::invalid_argument("tail_slope: bad window");
  std::sort(sample.begin(), sample.end());

  const std::size_t lo = static_cast<std::size_t>(window_lo * n);
  const std::size_t hi = static_cast<std::size_t>(window_hi * n);
  if (hi <= lo + 2) throw std::invalid_argument("tail_slope: window too small");

  // Evenly spaced ranks lo .. hi-1 (inclusive), at most `points` of them.
  std::vector<std::size_t> idx;
  idx.reserve(points);
  std::size_t prev = static_cast<std::size_t>(-1);
  for (int k = 0; k < points; ++k) {
    const double t =
        lo + (static_cast<double>(hi - 1 - lo)) * k / (points - 1);
    const auto i = static_cast<std::size_t>(t);
    if (i != prev) idx.push_back(i);
    prev = i;
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::vector<double> lxs, lys;
  lxs.reserve(idx.size());
  lys.reserve(idx.size());
  for (const std::size_t i : idx) {
    const double x = sample[i];
    if (!(x > 0.0))
      throw std::invalid_argument("tail_slope: non-positive threshold in window");
    const double surv = 1.0 - static_cast<double>(i + 1) / n;
    if (!(surv > 0.0)) continue;
    const double lx = std::log(x), ly = std::log(surv);
    lxs.push_back(lx);
    lys.push_back(ly);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double k = static_cast<double>(lxs.size());
  if (k < 3.0) throw std::invalid_argument("tail_slope: too few fit points");
  const double det = k * sxx - sx * sx;
  const double slope = (k * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / k;

  double rss = 0.0;
  for (std::size_t i = 0; i < lxs.size(); ++i) {
    const double r = lys[i] - (slope * lxs[i] + intercept);
    rss += r * r;
  }
  const double var_slope = (rss / (k - 2.0)) / (sxx - sx * sx / k);

  TailEstimate est;
  est.exponent = -slope;
  est.constant = std::exp(intercept);
  est.slope_se = std::sqrt(std::max(var_slope, 0.0));
  est.points = lxs.size();
  est.window_lo = window_lo;
  est.window_hi = window_hi;
  return est;
}

TransformEstimate mc_transform(const std::vector<double>& sample,
                               TransformKind kind, double arg) {
  if (sample.empty())
    throw std::invalid_argument("mc_transform: empty sample");
  const std::size_t n = sample.size();
  double sr = 0.0, si = 0.0, srr = 0.0, sii = 0.0;
  if (kind == TransformKind::Laplace) {
    for (const double x : sample) {
      const double a = arg * x;
      const double v = (a > 744.0) ? 0.0 : std::exp(-a);
      sr += v;
      srr += v * v;
    }
  } else {
    for (const double x : sample) {
      const double c = std::cos(arg * x), s = std::sin(arg * x);
      sr += c;
      si += s;
      srr += c * c;
      sii += s * s;
    }
  }
  const double mr = sr / n, mi = si / n;
  const double vr = std::max(srr / n - mr * mr, 0.0);
  const double vi = std::max(sii / n - mi * mi, 0.0);
  TransformEstimate e;
  e.estimate = {mr, mi};
  e.se_real = std::sqrt(vr / n);
  e.se_imag = std::sqrt(vi / n);
  e.n = n;
  return e;
}

}  // namespace heavytail::stats
