#include "heavytail/families.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace heavytail {
namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

FamilySpec FamilySpec::mittag_leffler(double delta) {
  require(finite(delta) && delta > 0.0 && delta <= 1.0,
          "mittag-leffler: delta must lie in (0,1]");
  return {Family::MittagLeffler, delta, 0.0};
}

FamilySpec FamilySpec::linnik(double alpha) {
  require(finite(alpha) && alpha > 0.0 && alpha <= 2.0,
          "linnik: alpha must lie in (0,2]");
  return {Family::Linnik, alpha, 0.0};
}

FamilySpec FamilySpec::two_sided_ml(double delta) {
  require(finite(delta) && delta > 0.0 && delta <= 1.0,
          "two-sided-ml: delta must lie in (0,1]");
  return {Family::TwoSidedML, delta, 0.0};
}

FamilySpec FamilySpec::one_sided_linnik(double alpha) {
  require(finite(alpha) && alpha > 0.0 && alpha <= 2.0,
          "one-sided-linnik: alpha must lie in (0,2]");
  return {Family::OneSidedLinnik, alpha, 0.0};
}

FamilySpec FamilySpec::weibull(double gamma) {
  require(finite(gamma) && gamma > 0.0, "weibull: gamma must be positive");
  return {Family::Weibull, gamma, 0.0};
}

FamilySpec FamilySpec::exponential() { return {Family::Exponential, 1.0, 0.0}; }
FamilySpec FamilySpec::rayleigh() { return {Family::Rayleigh, 2.0, 0.0}; }
FamilySpec FamilySpec::laplace() { return {Family::Laplace, 0.0, 0.0}; }
FamilySpec FamilySpec::normal() { return {Family::Normal, 0.0, 0.0}; }
FamilySpec FamilySpec::half_normal() { return {Family::HalfNormal, 0.0, 0.0}; }

FamilySpec FamilySpec::positive_stable(double delta) {
  require(finite(delta) && delta > 0.0 && delta <= 1.0,
          "positive-stable: delta must lie in (0,1]");
  return {Family::PositiveStable, delta, 0.0};
}

FamilySpec FamilySpec::symmetric_stable(double alpha) {
  require(finite(alpha) && alpha > 0.0 && alpha <= 2.0,
          "symmetric-stable: alpha must lie in (0,2]");
  return {Family::SymmetricStable, alpha, 0.0};
}

FamilySpec FamilySpec::kozubowski_k(double rho) {
  require(finite(rho) && rho > 0.0 && rho < 1.0,
          "kozubowski-k: rho must lie in (0,1)");
  return {Family::KozubowskiK, rho, 0.0};
}

FamilySpec FamilySpec::ratio_q(double alpha, double alpha_prime) {
  require(finite(alpha) && finite(alpha_prime) && alpha > 0.0 &&
              alpha < alpha_prime && alpha_prime <= 2.0,
          "ratio-q: need 0 < alpha < alpha' <= 2");
  return {Family::RatioQ, alpha, alpha_prime};
}

FamilySpec FamilySpec::stable_ratio(double alpha) {
  require(finite(alpha) && alpha > 0.0 && alpha <= 1.0,
          "stable-ratio: alpha must lie in (0,1]");
  return {Family::StableRatio, alpha, 0.0};
}

FamilySpec FamilySpec::h_delta(double delta) {
  require(finite(delta) && delta > 0.0 && delta <= 1.0,
          "h-delta: delta must lie in (0,1]");
  return {Family::HDelta, delta, 0.0};
}

FamilySpec FamilySpec::geometric(double p) {
  require(finite(p) && p > 0.0 && p < 1.0, "geometric: p must lie in (0,1)");
  return {Family::Geometric, p, 0.0};
}

bool FamilySpec::symmetric() const {
  switch (family) {
    case Family::Linnik:
    case Family::TwoSidedML:
    case Family::Laplace:
    case Family::Normal:
    case Family::SymmetricStable:
      return true;
    default:
      return false;
  }
}

bool FamilySpec::nonnegative() const { return !symmetric(); }

std::string family_name(Family f) {
  switch (f) {
    case Family::MittagLeffler: return "mittag-leffler";
    case Family::Linnik: return "linnik";
    case Family::TwoSidedML: return "two-sided-ml";
    case Family::OneSidedLinnik: return "one-sided-linnik";
    case Family::Weibull: return "weibull";
    case Family::Exponential: return "exponential";
    case Family::Rayleigh: return "rayleigh";
    case Family::Laplace: return "laplace";
    case Family::Normal: return "normal";
    case Family::HalfNormal: return "half-normal";
    case Family::PositiveStable: return "positive-stable";
    case Family::SymmetricStable: return "symmetric-stable";
    case Family::KozubowskiK: return "kozubowski-k";
    case Family::RatioQ: return "ratio-q";
    case Family::StableRatio: return "stable-ratio";
    case Family::HDelta: return "h-delta";
    case Family::Geometric: return "geometric";
  }
  return "unknown";
}

std::optional<Family> family_from_name(const std::string& name) {
  static const Family all[] = {
      Family::MittagLeffler,  Family::Linnik,       Family::TwoSidedML,
      Family::OneSidedLinnik, Family::Weibull,      Family::Exponential,
      Family::Rayleigh,       Family::Laplace,      Family::Normal,
      Family::HalfNormal,     Family::PositiveStable,
      Family::SymmetricStable, Family::KozubowskiK, Family::RatioQ,
      Family::StableRatio,    Family::HDelta,       Family::Geometric};
  for (Family f : all) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

std::string FamilySpec::to_string() const {
  char buf[96];
  switch (family) {
    case Family::Exponential:
    case Family::Rayleigh:
    case Family::Laplace:
    case Family::Normal:
    case Family::HalfNormal:
      return family_name(family);
    case Family::RatioQ:
      std::snprintf(buf, sizeof buf, "%s(%g,%g)", family_name(family).c_str(),
                    a, b);
      return buf;
    default:
      std::snprintf(buf, sizeof buf, "%s(%g)", family_name(family).c_str(), a);
      return buf;
  }
}

FamilySpec FamilySpec::parse(const std::string& text) {
  std::string name = text;
  double p1 = 0.0, p2 = 0.0;
  int nparams = 0;
  const auto open = text.find('(');
  if (open != std::string::npos) {
    require(!text.empty() && text.back() == ')', "family: unbalanced '('");
    name = text.substr(0, open);
    std::string inner = text.substr(open + 1, text.size() - open - 2);
    const auto comma = inner.find(',');
    try {
      if (comma == std::string::npos) {
        p1 = std::stod(inner);
        nparams = 1;
      } else {
        p1 = std::stod(inner.substr(0, comma));
        p2 = std::stod(inner.substr(comma + 1));
        nparams = 2;
      }
    } catch (const std::exception&) {
      throw std::invalid_argument("family: cannot parse parameters in '" +
                                  text + "'");
    }
  }
  const auto fam = family_from_name(name);
  require(fam.has_value(), "family: unknown name '" + name + "'");
  const auto need = [&](int n) {
    require(nparams == n, "family '" + name + "': expected " +
                              std::to_string(n) + " parameter(s)");
  };
  switch (*fam) {
    case Family::MittagLeffler: need(1); return mittag_leffler(p1);
    case Family::Linnik: need(1); return linnik(p1);
    case Family::TwoSidedML: need(1); return two_sided_ml(p1);
    case Family::OneSidedLinnik: need(1); return one_sided_linnik(p1);
    case Family::Weibull: need(1); return weibull(p1);
    case Family::Exponential: need(0); return exponential();
    case Family::Rayleigh: need(0); return rayleigh();
    case Family::Laplace: need(0); return laplace();
    case Family::Normal: need(0); return normal();
    case Family::HalfNormal: need(0); return half_normal();
    case Family::PositiveStable: need(1); return positive_stable(p1);
    case Family::SymmetricStable: need(1); return symmetric_stable(p1);
    case Family::KozubowskiK: need(1); return kozubowski_k(p1);
    case Family::RatioQ: need(2); return ratio_q(p1, p2);
    case Family::StableRatio: need(1); return stable_ratio(p1);
    case Family::HDelta: need(1); return h_delta(p1);
    case Family::Geometric: need(1); return geometric(p1);
  }
  throw std::invalid_argument("family: unknown name '" + name + "'");
}

}  // namespace heavytail
