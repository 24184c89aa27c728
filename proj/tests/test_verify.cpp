#include <doctest.h>

#include <set>
#include <stdexcept>

#include <json.hpp>

#include "heavytail/verify.hpp"

using namespace heavytail;
using namespace heavytail::verify;

TEST_CASE("identity registry is complete and well-formed") {
  const auto& ids = list_identities();
  CHECK(ids.size() >= 22);
  CHECK(ids.size() == 33);

  std::set<std::string> seen;
  for (const auto& spec : ids) {
    INFO("identity ", spec.id);
    CHECK(!spec.id.empty());
    CHECK(!spec.statement.empty());
    CHECK(!spec.citation.empty());
    CHECK(!spec.grid.empty());
    CHECK(seen.insert(spec.id).second);  // unique
    if (spec.kind == CheckKind::TwoSample) {
      CHECK(!spec.left_recipe.empty());
      CHECK(!spec.right_recipe.empty());
    } else {
      CHECK(!spec.left_recipe.empty());
      CHECK(spec.right_recipe.empty());
    }
  }
}

TEST_CASE("a two-sample identity passes at reduced size") {
  const VerificationRun run =
      run_identity("ML_K_EXP_VS_STABLE_WEIBULL", 2000, 3);
  CHECK(run.kind == CheckKind::TwoSample);
  CHECK(run.verdict);
  CHECK(run.expected_pass);
  CHECK(run.as_expected);
  CHECK(run.points.size() == 4);  // the delta grid
  for (const auto& p : run.points) {
    CHECK(p.reports.size() == 3);
    CHECK(p.required == 3);  // ceil(0.9 * 3)
  }
}

TEST_CASE("a CDF identity passes at reduced size") {
  const VerificationRun run = run_identity("TWOSIDED_NORMAL_VS_CDF", 2000, 3);
  CHECK(run.kind == CheckKind::OneSample);
  CHECK(run.as_expected);
}

TEST_CASE("unknown identities are rejected") {
  CHECK_THROWS_AS(run_identity("NOPE", 100, 1), std::invalid_argument);
}

TEST_CASE("identity runs are thread-invariant") {
  const VerificationRun one = run_identity("LINNIK_STABLE_ML_VS_NORMAL_ML",
                                           2000, 3, 1e-3, EvalPolicy{}, 1);
  const VerificationRun four = run_identity("LINNIK_STABLE_ML_VS_NORMAL_ML",
                                            2000, 3, 1e-3, EvalPolicy{}, 4);
  REQUIRE(one.points.size() == four.points.size());
  for (std::size_t i = 0; i < one.points.size(); ++i) {
    REQUIRE(one.points[i].reports.size() == four.points[i].reports.size());
    for (std::size_t k = 0; k < one.points[i].reports.size(); ++k) {
      CHECK(one.points[i].reports[k].statistic ==
            four.points[i].reports[k].statistic);
    }
  }
}

TEST_CASE("negative controls fail as designed") {
  const auto controls = run_negative_controls(20000, 5);
  REQUIRE(controls.size() == 3);
  for (const auto& run : controls) {
    INFO("control ", run.id);
    CHECK(!run.expected_pass);
    CHECK(!run.verdict);     // the mutation is detected
    CHECK(run.as_expected);  // i.e. the control failed
  }
  CHECK(all_as_expected(controls));
}

TEST_CASE("transform check matches the Mittag-Leffler Laplace transform") {
  const TransformCheck check = run_transform_check(
      "ML_VIA_K_EXP", FamilySpec::mittag_leffler(0.6), TransformKind::Laplace,
      {0.5, 1.0, 2.0}, 20000, 99);
  CHECK(check.pass);
  REQUIRE(check.points.size() == 3);
  for (const auto& p : check.points) {
    CHECK(p.within);
    CHECK(p.se_re > 0.0);
    CHECK(p.exact.imag() == 0.0);
  }
}

TEST_CASE("tail check resolves the Mittag-Leffler exponent at moderate size") {
  const TailCheck check =
      run_tail_check(FamilySpec::mittag_leffler(0.5), 200000, 4242);
  CHECK(check.pass);
  CHECK(check.supported == "delta");
  CHECK(check.estimate.exponent == doctest::Approx(0.5).epsilon(0.10));
  CHECK_THROWS_AS(run_tail_check(FamilySpec::normal(), 1000, 1), EvalError);
}

TEST_CASE("JSON report envelopes parse and carry the version tag") {
  const auto runs = run_negative_controls(2000, 2);
  const auto doc = nlohmann::json::parse(to_json(runs));
  CHECK(doc.at("schema") == "heavytail/v1");
  CHECK(doc.at("kind") == "verification-runs");
  CHECK(doc.at("runs").size() == runs.size());

  const std::vector<TailCheck> tails{
      run_tail_check(FamilySpec::linnik(1.0), 50000, 7)};
  const auto tail_doc = nlohmann::json::parse(to_json(tails));
  CHECK(tail_doc.at("kind") == "tail-checks");
  CHECK(tail_doc.at("checks")[0].at("candidates").size() == 2);
}
