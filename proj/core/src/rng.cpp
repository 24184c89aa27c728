#include "heavytail/rng.hpp"

#include <algorithm>
#include <cmath>

namespace heavytail {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Stirling tail ln(k!) - [0.5*ln(2*pi) + (k+0.5)*ln(k+1) - (k+1)]
// as tabulated/expanded by Hörmann (1993) for the BTRD squeeze.
double stirling_tail(double k) {
  static const double table[10] = {
      0.08106146679532726, 0.04134069595540929, 0.02767792568499834,
      0.02079067210376509, 0.01664469118982119, 0.01387612882307075,
      0.01189670994589177, 0.01041126526197209, 0.009255462182712733,
      0.008330563433362871};
  if (k < 10.0) return table[static_cast<int>(k)];
  const double ik2 = 1.0 / ((k + 1.0) * (k + 1.0));
  return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0) * ik2) * ik2) / (k + 1.0);
}

}  // namespace

// Binomial inverse-CDF search (Devroye 1986, ch. X.4) for n*min(p,q) < 10;
// BTRD transformed rejection (Hörmann, "The generation of binomial random
// variates", J. Stat. Comput. Simul. 46, 1993) otherwise.
double RngStream::binomial(double n, double p) noexcept {
  if (n <= 0.0 || p <= 0.0) return 0.0;
  if (p >= 1.0) return n;
  if (p > 0.5) return n - binomial(n, 1.0 - p);

  const double q = 1.0 - p;
  if (n * p < 10.0) {
    // Sequential search from 0; expected work O(n*p).
    const double s = p / q;
    double f = std::exp(n * std::log1p(-p));
    double u = next_u01();
    double k = 0.0;
    while (u > f && k < n) {
      u -= f;
      k += 1.0;
      f *= s * (n - k + 1.0) / k;
    }
    return k;
  }

  // BTRD setup.
  const double m = std::floor((n + 1.0) * p);
  const double r = p / q;
  const double nr = (n + 1.0) * r;
  const double npq = n * p * q;
  const double sq = std::sqrt(npq);
  const double b = 1.15 + 2.53 * sq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = n * p + 0.5;
  const double alpha = (2.83 + 5.1 / b) * sq;
  const double vr = 0.92 - 4.2 / b;
  const double urvr = 0.86 * vr;

  for (;;) {
    double v = next_u01();
    double u;
    if (v <= urvr) {
      u = v / vr - 0.43;
      return std::floor((2.0 * a / (0.5 - std::fabs(u)) + b) * u + c);
    }
    if (v >= vr) {
      u = next_u01() - 0.5;
    } else {
      u = v / vr - 0.93;
      u = std::copysign(0.5, u) - u;
      v = next_u01() * vr;
    }
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + c);
    if (k < 0.0 || k > n) continue;
    v = v * alpha / (a / (us * us) + b);
    const double km = std::fabs(k - m);
    if (km <= 15.0) {
      // Explicit pmf ratio recursion.
      double f = 1.0;
      if (m < k) {
        for (double i = m + 1.0; i <= k; i += 1.0) f *= nr / i - r;
      } else if (m > k) {
        for (double i = k + 1.0; i <= m; i += 1.0) v *= nr / i - r;
      }
      if (v <= f) return k;
      continue;
    }
    v = std::log(v);
    const double rho =
        (km / npq) * (((km / 3.0 + 0.625) * km + 1.0 / 6.0) / npq + 0.5);
    const double t = -km * km / (2.0 * npq);
    if (v < t - rho) return k;
    if (v > t + rho) continue;
    const double nm = n - m + 1.0;
    const double h = (m + 0.5) * std::log((m + 1.0) / (r * nm)) +
                     stirling_tail(m) + stirling_tail(n - m);
    const double nk = n - k + 1.0;
    if (v <= h + (n + 1.0) * std::log(nm / nk) +
                 (k + 0.5) * std::log(nk * r / (k + 1.0)) -
                 stirling_tail(k) - stirling_tail(n - k)) {
      return k;
    }
  }
}

// Poisson: product-of-uniforms inversion (Knuth) below mean 10; PTRS
// transformed rejection with squeeze (Hörmann, "The transformed rejection
// method for generating Poisson random variables", Insurance Math. Econom.
// 12, 1993) above.  For extreme means (> 1e10) the lgamma cancellation in
// the acceptance test costs ~1e-3 absolute, far below the sampling noise
// scale sqrt(mean).
double RngStream::poisson(double mean) noexcept {
  if (mean <= 0.0) return 0.0;
  if (mean < 10.0) {
    const double limit = std::exp(-mean);
    double prod = next_u01();
    double k = 0.0;
    while (prod > limit) {
      prod *= next_u01();
      k += 1.0;
    }
    return k;
  }
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  const double lmu = std::log(mean);
  for (;;) {
    const double u = next_u01() - 0.5;
    double v = next_u01();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return k;
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * lmu - mean - std::lgamma(k + 1.0)) {
      return k;
    }
  }
}

// Marsaglia & Tsang, "A simple method for generating gamma variables",
// ACM TOMS 26 (2000); shape < 1 boosted through G_a = G_{a+1} * U^{1/a}.
double RngStream::gamma(double shape) noexcept {
  if (shape < 1.0) {
    const double boost = std::pow(next_u01(), 1.0 / shape);
    return gamma(shape + 1.0) * boost;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_u01();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

// Kanter (1975), "Stable densities under change of scale and total
// variation inequalities": if theta ~ U(0,pi) and W ~ Exp(1),
//   S = (A(theta)/W)^{(1-d)/d},
//   A(theta) = [sin(d theta)^d sin((1-d) theta)^{1-d} / sin theta]^{1/(1-d)},
// has Laplace transform exp(-s^d).  Evaluated in logs for stability as
// d -> 1; d == 1 is the unit point mass.
double RngStream::positive_stable(double delta) noexcept {
  if (delta >= 1.0) return 1.0;
  const double theta = kPi * next_u01();
  const double lw = std::log(exponential());
  const double la =
      delta * std::log(std::sin(delta * theta)) +
      (1.0 - delta) * std::log(std::sin((1.0 - delta) * theta)) -
      std::log(std::sin(theta));
  // log S = la / delta - lw * (1-delta)/delta
  return std::exp(la / delta - lw * (1.0 - delta) / delta);
}

// Chambers, Mallows & Stuck (1976), "A method for simulating stable random
// variables": theta ~ U(-pi/2, pi/2), W ~ Exp(1),
//   X = sin(a theta)/cos(theta)^{1/a} * [cos((a-1) theta)/W]^{(1-a)/a}
// has characteristic function exp(-|t|^a); a == 1 reduces to tan(theta)
// (standard Cauchy), a == 2 to 2 sin(theta) sqrt(W) (normal, variance 2).
double RngStream::symmetric_stable(double alpha) noexcept {
  const double theta = kPi * (next_u01() - 0.5);
  if (alpha == 1.0) return std::tan(theta);
  const double w = exponential();
  return std::sin(alpha * theta) / std::pow(std::cos(theta), 1.0 / alpha) *
         std::pow(std::cos((alpha - 1.0) * theta) / w, (1.0 - alpha) / alpha);
}

}  // namespace heavytail
