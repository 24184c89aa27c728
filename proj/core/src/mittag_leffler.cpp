#include "heavytail/mittag_leffler.hpp"

#include <cmath>
#include <limits>

#include "detail_math.hpp"

namespace heavytail {
namespace {

using detail::kPi;

// Generic long-double power series sum_{n>=0} z^n / Gamma(d n + b).
// Terms are evaluated in log space; the sum stops once past the largest
// term and below series_tol * |sum|.
double ml_series2(double delta, double beta, double z,
                  const EvalPolicy& policy) {
  if (z == 0.0) return 1.0 / std::tgamma(beta);
  const long double lz = std::log(std::fabs(static_cast<long double>(z)));
  const bool neg = z < 0.0;
  long double sum = 0.0L;
  long double prev = std::numeric_limits<long double>::infinity();
  bool past_peak = false;
  for (int n = 0; n <= policy.max_terms; ++n) {
    const long double lmag =
        n * lz - std::lgamma(static_cast<long double>(delta) * n + beta);
    const long double mag = std::exp(lmag);
    const long double term = (neg && (n % 2 == 1)) ? -mag : mag;
    sum += term;
    past_peak = (mag <= prev);
    if (past_peak && mag < policy.series_tol * std::fabs(sum) && n > 2) {
      return static_cast<double>(sum);
    }
    prev = mag;
  }
  // All max_terms consumed: either converged slowly or diverging use.
  if (std::fabs(std::exp(policy.max_terms * lz -
                         std::lgamma(static_cast<long double>(delta) *
                                         policy.max_terms +
                                     beta))) <
      policy.series_tol * std::fabs(sum)) {
    return static_cast<double>(sum);
  }
  throw EvalError("mittag-leffler series did not converge inside policy");
}

void require_delta(double delta) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw EvalError("mittag-leffler: delta must lie in (0,1]");
}

// 1 / Gamma(1 - d k) via the reflection formula (zero at the poles).
double inv_gamma_reflect(double dk) {
  return std::sin(kPi * dk) * std::tgamma(dk) / kPi;
}

// E_d(z) for large positive z:
//   (1/d) exp(z^{1/d}) - sum_{k>=1} z^{-k} / Gamma(1 - d k),
// the asymptotic stopping at the smallest term.
double ml_e_positive_large(double delta, double z) {
  const double lead = std::exp(std::pow(z, 1.0 / delta)) / delta;
  double corr = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 40; ++k) {
    const double mag = std::exp(std::lgamma(delta * k) - k * std::log(z));
    if (mag > prev) break;
    corr += inv_gamma_reflect(delta * k) * std::exp(-k * std::log(z));
    if (mag < 1e-17) break;
    prev = mag;
  }
  return lead - corr;
}

}  // namespace

double ml_e_series(double delta, double z, const EvalPolicy& policy) {
  require_delta(delta);
  policy.validate();
  return ml_series2(delta, 1.0, z, policy);
}

double ml_e_integral(double delta, double z, const EvalPolicy& policy) {
  require_delta(delta);
  policy.validate();
  if (!(z < 0.0)) throw EvalError("ml_e_integral requires z < 0");
  if (delta == 1.0) return std::exp(z);
  const double x = std::pow(-z, 1.0 / delta);
  const double p = 1.0 / delta;
  return detail::k_expect(
      delta, [&](double u) { return detail::exp_neg(x * std::pow(u, p)); },
      policy);
}

double ml_e_asymptotic(double delta, double z, const EvalPolicy& policy) {
  require_delta(delta);
  policy.validate();
  if (!(z < 0.0)) throw EvalError("ml_e_asymptotic requires z < 0");
  if (delta == 1.0) return std::exp(z);
  const double x = std::pow(-z, 1.0 / delta);
  return detail::asym_survival_series(kPi * delta, delta, x, 1.0);
}

double ml_e(double delta, double z, const EvalPolicy& policy) {
  require_delta(delta);
  policy.validate();
  if (delta == 1.0) return std::exp(z);
  if (z == 0.0) return 1.0;
  if (z > 0.0) {
    if (z <= policy.series_cut) return ml_series2(delta, 1.0, z, policy);
    return ml_e_positive_large(delta, z);
  }
  const double az = -z;
  if (az >= policy.asym_cut) return ml_e_asymptotic(delta, z, policy);
  // The alternating series cancels catastrophically once x = (-z)^{1/d}
  // is large (terms peak near e^x); fall through to the integral there.
  const double x = std::pow(az, 1.0 / delta);
  if (az <= policy.series_cut && x <= 20.0)
    return ml_series2(delta, 1.0, z, policy);
  return ml_e_integral(delta, z, policy);
}

double ml_pdf_series(double delta, double x, const EvalPolicy& policy) {
  require_delta(delta);
  policy.validate();
  if (!(x > 0.0)) throw EvalError("ml_pdf_series requires x > 0");
  const double z = std::pow(x, delta);
  return std::pow(x, delta - 1.0) * ml_series2(delta, delta, -z, policy);
}

double ml_pdf_integral(double delta, double x, const EvalPolicy& policy) {
  require_delta(delta);
  policy.validate();
  if (!(x > 0.0)) throw EvalError("ml_pdf_integral requires x > 0");
  if (delta == 1.0) return std::exp(-x);
  const double p = 1.0 / delta;
  return detail::k_expect(
      delta,
      [&](double u) { return detail::texp_neg(std::pow(u, p), x); },
      policy);
}

double ml_pdf_asymptotic(double delta, double x, const EvalPolicy& policy) {
  require_delta(delta);
  policy.validate();
  if (!(x > 0.0)) throw EvalError("ml_pdf_asymptotic requires x > 0");
  return detail::asym_density_series(kPi * delta, delta, x, 1.0);
}

double ml_pdf(double delta, double x, const EvalPolicy& policy) {
  require_delta(delta);
  policy.validate();
  if (x < 0.0) return 0.0;
  if (delta == 1.0) return std::exp(-x);
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  const double z = std::pow(x, delta);
  if (z >= policy.asym_cut) return ml_pdf_asymptotic(delta, x, policy);
  if (z <= policy.series_cut && x <= 20.0)
    return ml_pdf_series(delta, x, policy);
  return ml_pdf_integral(delta, x, policy);
}

double ml_survival(double delta, double x, const EvalPolicy& policy) {
  require_delta(delta);
  policy.validate();
  if (x <= 0.0) return 1.0;
  if (delta == 1.0) return std::exp(-x);
  return ml_e(delta, -std::pow(x, delta), policy);
}

double ml_cdf(double delta, double x, const EvalPolicy& policy) {
  require_delta(delta);
  policy.validate();
  if (x <= 0.0) return 0.0;
  if (delta == 1.0) return -std::expm1(-x);
  const double z = std::pow(x, delta);
  if (z <= 0.7) {
    // Direct series 1 - E_d(-z) = sum_{n>=1} (-1)^{n+1} z^n / Gamma(d n + 1)
    // avoids cancellation for small arguments.
    double sum = 0.0;
    double zp = 1.0;
    for (int n = 1; n <= policy.max_terms; ++n) {
      zp *= z;
      const double term = zp / std::tgamma(delta * n + 1.0);
      sum += (n % 2 == 1) ? term : -term;
      if (term < policy.series_tol * std::fabs(sum)) return sum;
    }
    return sum;
  }
  return 1.0 - ml_survival(delta, x, policy);
}

}  // namespace heavytail
