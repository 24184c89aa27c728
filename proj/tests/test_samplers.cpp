#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "heavytail/samplers.hpp"

using namespace heavytail;
using namespace heavytail::samplers;

namespace {

// A parameter point accepted by `recipe` for its target family, found by
// scanning a small candidate list with the recipe's own validity predicate.
FamilySpec valid_spec_for(const Recipe& recipe) {
  const std::vector<double> params{0.6, 1.0, 1.4, 0.5, 2.0, 0.25};
  switch (recipe.target) {
    case Family::Exponential:
      return FamilySpec::exponential();
    case Family::Rayleigh:
      return FamilySpec::rayleigh();
    case Family::Laplace:
      return FamilySpec::laplace();
    case Family::Normal:
      return FamilySpec::normal();
    case Family::HalfNormal:
      return FamilySpec::half_normal();
    case Family::RatioQ:
      return FamilySpec::ratio_q(1.0, 2.0);
    default:
      break;
  }
  for (double p : params) {
    try {
      FamilySpec spec{};
      switch (recipe.target) {
        case Family::MittagLeffler: spec = FamilySpec::mittag_leffler(p); break;
        case Family::Linnik: spec = FamilySpec::linnik(p); break;
        case Family::TwoSidedML: spec = FamilySpec::two_sided_ml(p); break;
        case Family::OneSidedLinnik: spec = FamilySpec::one_sided_linnik(p); break;
        case Family::Weibull: spec = FamilySpec::weibull(p); break;
        case Family::PositiveStable: spec = FamilySpec::positive_stable(p); break;
        case Family::SymmetricStable: spec = FamilySpec::symmetric_stable(p); break;
        case Family::KozubowskiK: spec = FamilySpec::kozubowski_k(p); break;
        case Family::StableRatio: spec = FamilySpec::stable_ratio(p); break;
        case Family::HDelta: spec = FamilySpec::h_delta(p); break;
        case Family::Geometric: spec = FamilySpec::geometric(p); break;
        default: continue;
      }
      if (recipe.valid(spec)) return spec;
    } catch (const std::invalid_argument&) {
    }
  }
  FAIL("no valid parameter point for recipe ", recipe.id);
  return FamilySpec::exponential();
}

}  // namespace

TEST_CASE("registry holds the full recipe catalogue") {
  const auto& reg = recipe_registry();
  CHECK(reg.size() == 40);

  std::set<std::string> ids;
  for (const auto& r : reg) {
    CHECK(!r.id.empty());
    CHECK(!r.equation.empty());
    CHECK(!r.method.empty());
    CHECK(r.valid != nullptr);
    CHECK(r.draw != nullptr);
    ids.insert(r.id);
  }
  CHECK(ids.size() == reg.size());  // unique ids

  // The core catalogue every consumer relies on.
  const char* required[] = {
      "ML_VIA_STABLE_WEIBULL",  "ML_VIA_K_EXP",
      "ML_VIA_EXP_RATIO",       "ML_VIA_HALF_NORMAL",
      "ML_VIA_WEIBULL_MIX",     "ML_VIA_K_STEP",
      "LINNIK_VIA_STABLE_WEIBULL", "LINNIK_VIA_NORMAL_ML",
      "LINNIK_VIA_STABLE_ML",   "LINNIK_VIA_LAPLACE_RATIO",
      "LINNIK_VIA_LAPLACE_Q",   "LINNIK_VIA_Q_STEP",
      "TWOSIDED_ML_VIA_SIGN",   "TWOSIDED_ML_VIA_NORMAL",
      "ONESIDED_LINNIK_VIA_ABS_NORMAL", "WEIBULL_VIA_RAYLEIGH",
      "WEIBULL_VIA_EXP",        "WEIBULL_VIA_WEIBULL",
      "WEIBULL_POWER",          "EXP_VIA_WEIBULL",
      "EXP_VIA_HALF_NORMAL",    "STABLE_COMPOSE",
      "SYMSTABLE_VIA_NORMAL",   "LAPLACE_VIA_NORMAL_EXP",
      "RATIO_VIA_K_POWER",      "RATIOQ_VIA_SQRT_RATIO",
  };
  for (const char* id : required) {
    INFO("required recipe ", id);
    CHECK(find_recipe(id) != nullptr);
  }

  CHECK(find_recipe("NO_SUCH_RECIPE") == nullptr);
  CHECK_THROWS_AS(require_recipe("NO_SUCH_RECIPE"), std::invalid_argument);
}

TEST_CASE("every recipe draws finite values respecting the support") {
  RngStream probe(2024, 0);
  for (const auto& recipe : recipe_registry()) {
    const FamilySpec spec = valid_spec_for(recipe);
    INFO("recipe ", recipe.id, " at ", spec.to_string());
    bool all_finite = true, support_ok = true;
    for (int i = 0; i < 2000; ++i) {
      const double v = recipe.draw(spec, probe);
      all_finite = all_finite && std::isfinite(v);
      if (spec.nonnegative()) support_ok = support_ok && v >= 0.0;
    }
    CHECK(all_finite);
    CHECK(support_ok);
  }
}

TEST_CASE("batches are a pure function of (recipe, target, n, seed, stream)") {
  const FamilySpec spec = FamilySpec::mittag_leffler(0.6);
  const auto a = sample("ML_VIA_K_EXP", spec, 70000, 42, 1, 1);
  const auto b = sample("ML_VIA_K_EXP", spec, 70000, 42, 1, 3);
  const auto c = sample("ML_VIA_K_EXP", spec, 70000, 42, 1, 8);
  CHECK(a.values == b.values);  // bitwise thread invariance
  CHECK(a.values == c.values);

  const auto again = sample("ML_VIA_K_EXP", spec, 70000, 42, 1, 1);
  CHECK(a.values == again.values);

  const auto other_seed = sample("ML_VIA_K_EXP", spec, 70000, 43, 1, 1);
  CHECK(a.values != other_seed.values);
  const auto other_stream = sample("ML_VIA_K_EXP", spec, 70000, 42, 2, 1);
  CHECK(a.values != other_stream.values);
}

TEST_CASE("shorter batches are prefixes of longer ones") {
  const FamilySpec spec = FamilySpec::linnik(1.0);
  const auto small = sample("LINNIK_VIA_NORMAL_ML", spec, 300, 7, 0, 1);
  const auto large = sample("LINNIK_VIA_NORMAL_ML", spec, 70000, 7, 0, 2);
  REQUIRE(large.values.size() == 70000);
  CHECK(std::equal(small.values.begin(), small.values.end(),
                   large.values.begin()));
  // Across the 65536-value chunk boundary.
  const auto chunk = sample("LINNIK_VIA_NORMAL_ML", spec, 65536, 7, 0, 1);
  CHECK(std::equal(chunk.values.begin(), chunk.values.end(),
                   large.values.begin()));
}

TEST_CASE("unknown recipes and invalid parameters are rejected") {
  CHECK_THROWS_AS(sample("NO_SUCH_RECIPE", FamilySpec::exponential(), 10, 1, 0),
                  std::invalid_argument);
  // A Mittag-Leffler recipe refuses a Linnik target.
  CHECK_THROWS_AS(sample("ML_VIA_K_EXP", FamilySpec::linnik(1.0), 10, 1, 0),
                  std::invalid_argument);
}

TEST_CASE("Monte Carlo transforms of the flagship recipes match closed forms") {
  const std::size_t n = 40000;
  SUBCASE("Mittag-Leffler Laplace transform") {
    const auto batch =
        sample("ML_VIA_K_EXP", FamilySpec::mittag_leffler(0.6), n, 5, 0, 2);
    for (double s : {0.5, 1.0, 2.0}) {
      double sum = 0.0, sumsq = 0.0;
      for (double v : batch.values) {
        const double e = std::exp(-s * v);
        sum += e;
        sumsq += e * e;
      }
      const double mean = sum / static_cast<double>(n);
      const double se = std::sqrt(
          (sumsq / static_cast<double>(n) - mean * mean) / static_cast<double>(n));
      const double exact = 1.0 / (1.0 + std::pow(s, 0.6));
      INFO("s = ", s);
      CHECK(std::abs(mean - exact) < 4.0 * se);
    }
  }
  SUBCASE("Linnik characteristic function") {
    const auto batch =
        sample("LINNIK_VIA_NORMAL_ML", FamilySpec::linnik(1.4), n, 6, 0, 2);
    for (double t : {0.5, 1.0, 2.0}) {
      double sum = 0.0, sumsq = 0.0;
      for (double v : batch.values) {
        const double e = std::cos(t * v);
        sum += e;
        sumsq += e * e;
      }
      const double mean = sum / static_cast<double>(n);
      const double se = std::sqrt(
          (sumsq / static_cast<double>(n) - mean * mean) / static_cast<double>(n));
      const double exact = 1.0 / (1.0 + std::pow(t, 1.4));
      INFO("t = ", t);
      CHECK(std::abs(mean - exact) < 4.0 * se);
    }
  }
}

TEST_CASE("mixing-law primitives hit known one-dimensional facts") {
  RngStream rng(31, 0);
  // K(1) and the degenerate ratios collapse to the constant 1.
  CHECK(draw_k(1.0, rng) == 1.0);
  CHECK(draw_stable_ratio(1.0, rng) == 1.0);
  CHECK(draw_q(1.0, 1.0, rng) == 1.0);
  // H(delta) is 2 E (S/S')^2 and positive.
  for (int i = 0; i < 1000; ++i) {
    CHECK(draw_h_delta(0.5, rng) > 0.0);
    CHECK(draw_inverse_stable(0.7, rng) > 0.0);
  }
  // draw_primitive rejects composite families.
  CHECK_THROWS_AS(draw_primitive(FamilySpec::mittag_leffler(0.5), rng),
                  std::invalid_argument);
}
