// The Mittag-Leffler function E_d(z) = sum_n z^n / Gamma(d n + 1) for
// d in (0,1], and the density/CDF of the Mittag-Leffler law
//   f(x) = x^{d-1} E_{d,d}(-x^d),   F(x) = 1 - E_d(-x^d),   x >= 0,
// whose Laplace transform is 1/(1+s^d).
//
// Evaluation strategy (see EvalPolicy):
//   * power series near the origin (long double accumulation);
//   * an exact mixture representation for moderate negative arguments:
//     writing x = (-z)^{1/d},
//       E_d(-x^d) = E[exp(-x K^{1/d})],
//     where K has the self-reciprocal density
//       sin(pi d) / (pi d [u^2 + 2 u cos(pi d) + 1]) on u >= 0,
//     evaluated by tanh-sinh quadrature folded onto (0,1];
//   * the power-tail asymptotic series for large negative arguments;
//   * the exponential-plus-correction expansion on the positive axis.
//
// The series/quadrature switch honours policy.series_cut with one
// stability override: the alternating series loses precision once
// x = (-z)^{1/d} is large (terms peak near e^x), so for small d the
// integral representation takes over inside |z| <= series_cut as well.

#pragma once

#include "heavytail/eval_policy.hpp"

namespace heavytail {

// E_d(z) on the whole real axis.
double ml_e(double delta, double z, const EvalPolicy& policy = {});

// Individual regions, exposed for cross-checking; each is accurate only
// on its own region (see above).
double ml_e_series(double delta, double z, const EvalPolicy& policy = {});
double ml_e_integral(double delta, double z, const EvalPolicy& policy = {});
double ml_e_asymptotic(double delta, double z, const EvalPolicy& policy = {});

// Density of the Mittag-Leffler law on x > 0, with region pieces.
double ml_pdf(double delta, double x, const EvalPolicy& policy = {});
double ml_pdf_series(double delta, double x, const EvalPolicy& policy = {});
double ml_pdf_integral(double delta, double x, const EvalPolicy& policy = {});
double ml_pdf_asymptotic(double delta, double x, const EvalPolicy& policy = {});

// CDF / survival of the Mittag-Leffler law.
double ml_cdf(double delta, double x, const EvalPolicy& policy = {});
double ml_survival(double delta, double x, const EvalPolicy& policy = {});

}  // namespace heavytail
