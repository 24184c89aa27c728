// Distribution family descriptors.
//
// All laws are in "standard" parameterisation with unit scale:
//   MittagLeffler(d):   Laplace transform 1/(1+s^d), d in (0,1]
//   Linnik(a):          characteristic function 1/(1+|t|^a), a in (0,2]
//   TwoSidedML(d):      symmetrised Mittag-Leffler, d in (0,1]
//   OneSidedLinnik(a):  |Linnik(a)|, a in (0,2]
//   Weibull(g):         survival exp(-x^g), g > 0
//   Exponential:        Weibull(1)
//   Rayleigh:           Weibull(2)
//   Laplace:            density exp(-|x|)/2
//   Normal:             standard normal
//   HalfNormal:         |Normal|
//   PositiveStable(d):  Laplace transform exp(-s^d), d in (0,1]
//   SymmetricStable(a): characteristic function exp(-|t|^a), a in (0,2]
//   KozubowskiK(r):     density sin(pi r) / (pi r [x^2 + 2 x cos(pi r) + 1])
//                       on x >= 0, r in (0,1)
//   RatioQ(a,a'):       density a' sin(pi a/a') x^{a-1} /
//                       (pi [1 + x^{2a} + 2 x^a cos(pi a/a')]), 0 < a < a' <= 2
//   StableRatio(a):     S/S' for independent PositiveStable(a), a in (0,1]
//   HDelta(d):          2 W (S/S')^2 with W ~ Exp(1) independent of the
//                       PositiveStable(d) pair, d in (0,1]
//   Geometric(p):       support {1,2,...}, P(N=k) = p (1-p)^{k-1}

#pragma once

#include <optional>
#include <string>

namespace heavytail {

enum class Family {
  MittagLeffler,
  Linnik,
  TwoSidedML,
  OneSidedLinnik,
  Weibull,
  Exponential,
  Rayleigh,
  Laplace,
  Normal,
  HalfNormal,
  PositiveStable,
  SymmetricStable,
  KozubowskiK,
  RatioQ,
  StableRatio,
  HDelta,
  Geometric,
};

// A validated (family, parameters) pair.  `a` holds the family's principal
// parameter (delta, alpha, gamma, rho or p); `b` holds RatioQ's second
// index alpha'.
struct FamilySpec {
  Family family = Family::Exponential;  // parameter-free default
  double a = 0.0;
  double b = 0.0;

  static FamilySpec mittag_leffler(double delta);
  static FamilySpec linnik(double alpha);
  static FamilySpec two_sided_ml(double delta);
  static FamilySpec one_sided_linnik(double alpha);
  static FamilySpec weibull(double gamma);
  static FamilySpec exponential();
  static FamilySpec rayleigh();
  static FamilySpec laplace();
  static FamilySpec normal();
  static FamilySpec half_normal();
  static FamilySpec positive_stable(double delta);
  static FamilySpec symmetric_stable(double alpha);
  static FamilySpec kozubowski_k(double rho);
  static FamilySpec ratio_q(double alpha, double alpha_prime);
  static FamilySpec stable_ratio(double alpha);
  static FamilySpec h_delta(double delta);
  static FamilySpec geometric(double p);

  // Parse "name" or "name(params)" as printed by to_string(), e.g.
  // "mittag-leffler(0.7)", "ratio-q(0.7,1.4)", "laplace".
  static FamilySpec parse(const std::string& text);

  double delta() const { return a; }
  double alpha() const { return a; }
  double gamma() const { return a; }
  double rho() const { return a; }
  double p() const { return a; }
  double alpha_prime() const { return b; }

  // True when the law is symmetric about 0.
  bool symmetric() const;
  // True when the support is contained in [0, inf).
  bool nonnegative() const;

  std::string to_string() const;

  bool operator==(const FamilySpec&) const = default;
};

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

}  // namespace heavytail
