// Density, CDF, quantile, integral transforms and tail laws for every
// family in FamilySpec.
//
// Closed forms are used wherever they exist (Weibull-type laws, Laplace,
// normal variants, Cauchy, the Levy law, the K/Q/ratio kernels, and every
// degenerate boundary such as Linnik(2) = Laplace).  The heavy families
// (Mittag-Leffler, Linnik, their one/two-sided variants, and the H mixing
// law) evaluate through the shared self-reciprocal kernel quadrature and
// switch to power-tail asymptotic series far out.

#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "heavytail/eval_policy.hpp"
#include "heavytail/families.hpp"

namespace heavytail {

// survival(x) ~ constant * x^{-exponent} as x -> +inf.
struct TailLaw {
  double exponent = 0.0;
  double constant = 0.0;
};

double pdf(const FamilySpec& spec, double x, const EvalPolicy& policy = {});
double cdf(const FamilySpec& spec, double x, const EvalPolicy& policy = {});

// Upper-tail survival P(X > x); more accurate than 1 - cdf(x) far out.
double survival(const FamilySpec& spec, double x,
                const EvalPolicy& policy = {});

// Inverse CDF for q in (0,1).  Closed form where available; otherwise
// bisection to absolute tolerance ~1e-10 (capped at the double-precision
// resolution of the bracket) with brackets grown geometrically, seeded by
// the family's tail law where one exists.
double quantile(const FamilySpec& spec, double q,
                const EvalPolicy& policy = {});

enum class TransformKind { Laplace, CharFn };

// Closed-form Laplace transform E[exp(-s X)] or characteristic function
// E[exp(i t X)].  Throws EvalError for (family, kind) pairs without a
// closed form.
std::complex<double> transform(const FamilySpec& spec, TransformKind kind,
                               double arg);

// Power tail of the survival function.  Defined for MittagLeffler with
// delta < 1, Linnik with alpha < 2, and HDelta with delta < 1; every
// other case throws EvalError("no power tail").
TailLaw tail_law(const FamilySpec& spec);

// Reusable CDF evaluator for families whose exact CDF needs quadrature:
// tabulates survival on a log-spaced grid at construction and then
// evaluates by monotone interpolation with exact-exponent tail
// extrapolation beyond the grid (absolute error ~1e-5, far below the KS
// resolutions used in this library).  Closed-form families evaluate
// directly.  Instances are immutable and safe to share across threads.
class CachedCdf {
 public:
  explicit CachedCdf(const FamilySpec& spec, const EvalPolicy& policy = {},
                     int grid_points = 4096);

  double operator()(double x) const;
  const FamilySpec& spec() const { return spec_; }

 private:
  double positive_survival(double x) const;  // grid-interpolated part

  FamilySpec spec_;
  EvalPolicy policy_;
  bool direct_ = true;       // closed form: no grid
  bool symmetric_ = false;   // evaluate via |x| and reflect
  double tail_exponent_ = 0.0;
  double low_exponent_ = 0.0;   // survival-deficit exponent near 0
  double center_value_ = 0.0;   // survival at 0+ (1 or 1/2)
  std::vector<double> grid_x_;  // log-spaced support points
  std::vector<double> grid_s_;  // survival values at grid_x_
};

}  // namespace heavytail
