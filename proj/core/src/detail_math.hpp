// Internal numeric helpers shared by the Mittag-Leffler, Linnik and
// mixing-law evaluators.  Not installed.

#pragma once

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>

#include "heavytail/eval_policy.hpp"

namespace heavytail::detail {

inline constexpr double kPi = 3.14159265358979323846;

// Expectation E[g(K)] where K has the self-reciprocal density
//   sin(pi rho) / (pi rho [u^2 + 2 u cos(pi rho) + 1]),  u >= 0,
// for rho in (0,1).  The map u -> 1/u preserves the density's kernel, so
// the integral folds exactly onto (0,1]:
//   E[g(K)] = (sin(pi rho)/(pi rho)) *
//             Int_0^1 (g(u) + g(1/u)) / (u^2 + 2 u cos(pi rho) + 1) du.
// For rho > 1/2 the kernel has an interior Lorentzian peak at
// u0 = -cos(pi rho); the integral is split there.
template <typename G>
double k_expect(double rho, G&& g, const EvalPolicy& policy) {
  const double c = std::cos(kPi * rho);
  const double s = std::sin(kPi * rho);
  auto integrand = [&](double u) {
    const double denom = (u + c) * (u + c) + s * s;  // u^2 + 2cu + 1
    return (g(u) + g(1.0 / u)) / denom;
  };
  thread_local boost::math::quadrature::tanh_sinh<double> quad(15);
  double err1 = 0.0, err2 = 0.0;
  double total;
  if (c < -1e-12) {
    const double u0 = -c;
    total = quad.integrate(integrand, 0.0, u0, policy.quad_tol, &err1) +
            quad.integrate(integrand, u0, 1.0, policy.quad_tol, &err2);
  } else {
    total = quad.integrate(integrand, 0.0, 1.0, policy.quad_tol, &err1);
  }
  return s / (kPi * rho) * total;
}

// exp(-a) guarded against overflow in the argument.
inline double exp_neg(double a) { return (a > 744.0) ? 0.0 : std::exp(-a); }

// t * exp(-x t) with t possibly overflowing to +inf (limit is 0 for x>0).
inline double texp_neg(double t, double x) {
  if (!std::isfinite(t)) return 0.0;
  const double a = x * t;
  return (a > 744.0) ? 0.0 : t * std::exp(-a);
}

// Power-tail survival series shared by the heavy families:
//   amp * (1/pi) * sum_{m>=1} (-1)^{m-1} sin(m theta) Gamma(m d) xs^{-m d}
// evaluated adaptively; valid when xs^d is large.  Terms are added until
// they stop decreasing or drop below eps * |sum|.
inline double asym_survival_series(double theta, double d, double xs,
                                   double amp, int max_terms = 60) {
  const double lx = std::log(xs);
  double sum = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= max_terms; ++m) {
    const double lg = std::lgamma(m * d);
    const double lterm = lg - m * d * lx;
    if (lterm > 700.0) break;
    const double mag = std::exp(lterm);
    if (mag > prev) break;  // past the smallest term: stop
    const double term = (m % 2 == 1 ? 1.0 : -1.0) * std::sin(m * theta) * mag;
    sum += term;
    if (mag < 1e-17 * std::fabs(sum)) break;
    prev = mag;
  }
  return amp * sum / kPi;
}

// Derivative version (density):
//   amp * (1/pi) * sum (-1)^{m-1} sin(m theta) Gamma(m d + 1) xs^{-m d - 1}
inline double asym_density_series(double theta, double d, double xs,
                                  double amp, int max_terms = 60) {
  const double lx = std::log(xs);
  double sum = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= max_terms; ++m) {
    const double lg = std::lgamma(m * d + 1.0);
    const double lterm = lg - (m * d + 1.0) * lx;
    if (lterm > 700.0) break;
    const double mag = std::exp(lterm);
    if (mag > prev) break;
    const double term = (m % 2 == 1 ? 1.0 : -1.0) * std::sin(m * theta) * mag;
    sum += term;
    if (mag < 1e-17 * std::fabs(sum)) break;
    prev = mag;
  }
  return amp * sum / kPi;
}

}  // namespace heavytail::detail
