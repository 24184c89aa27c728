// Registry-driven verification: every distributional identity behind the
// sampler recipes, every closed-form transform, and every tail law is a
// named, runnable check.
//
// Identity checks draw both sides (or one side plus an analytic CDF) and
// apply the Kolmogorov-Smirnov test per seed; an identity passes at a
// parameter point iff at least ceil(0.9 * seeds) seeds accept, and the
// run's verdict requires every grid point to pass.  The seed-majority rule
// exists because KS at alpha = 1e-3 has a nonzero false-rejection rate
// while the identities themselves are exact.
//
// Negative controls are deliberately broken identities (a parameter
// perturbed by +0.15, or a wrong mixing law) that must FAIL; they guard
// against vacuous tests.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "heavytail/analytics.hpp"
#include "heavytail/eval_policy.hpp"
#include "heavytail/families.hpp"
#include "heavytail/stats.hpp"

namespace heavytail::verify {

enum class CheckKind {
  TwoSample,  // recipe vs recipe
  OneSample,  // recipe vs analytic CDF
};

struct IdentitySpec {
  std::string id;          // unique, e.g. "ML_K_EXP_VS_STABLE_WEIBULL"
  CheckKind kind;
  std::string left_recipe;   // registry recipe id
  std::string right_recipe;  // registry recipe id; empty for OneSample
  std::string statement;     // the distributional equality being tested
  std::string citation;      // nonempty methodological citation
  std::vector<FamilySpec> grid;  // fixed parameter sweep
  std::size_t default_n = 100000;
  int default_seeds = 20;
};

struct GofReport {
  std::uint64_t seed = 0;
  double statistic = 0.0;
  double critical = 0.0;
  double alpha = 0.0;
  bool reject = false;
};

struct PointResult {
  FamilySpec params;
  std::vector<GofReport> reports;  // ordered by seed
  int pass_count = 0;
  int required = 0;  // ceil(0.9 * seeds)
  bool pass = false;
};

struct VerificationRun {
  std::string id;
  CheckKind kind = CheckKind::TwoSample;
  std::string statement;
  std::string citation;
  std::size_t n = 0;
  double alpha = 0.0;
  int seeds = 0;
  std::vector<PointResult> points;
  bool verdict = false;        // all points pass
  bool expected_pass = true;   // negative controls expect failure
  bool as_expected = false;    // verdict == expected_pass
};

// The complete identity registry (>= 22 entries, unique ids, nonempty
// citations).  All entries are expected to pass.
const std::vector<IdentitySpec>& list_identities();

// Runs one identity over its whole parameter grid with seeds 1..seeds.
// Throws std::invalid_argument for an unknown id.
VerificationRun run_identity(const std::string& id, std::size_t n, int seeds,
                             double alpha = 1e-3,
                             const EvalPolicy& policy = EvalPolicy{},
                             int threads = 1);

// Every registry identity followed by the negative controls, in registry
// order (deterministic regardless of thread count).
std::vector<VerificationRun> run_all(std::size_t n, int seeds,
                                     double alpha = 1e-3,
                                     const EvalPolicy& policy = EvalPolicy{},
                                     int threads = 1);

// The three mutation-sensitivity checks; each must fail (expected_pass =
// false): a Mittag-Leffler recipe drawn with delta + 0.15, a Linnik recipe
// drawn with alpha + 0.15, and the wrong-mixing-law (normal variance H
// instead of 2M) construction against the Linnik CDF.
std::vector<VerificationRun> run_negative_controls(
    std::size_t n, int seeds, double alpha = 1e-3,
    const EvalPolicy& policy = EvalPolicy{}, int threads = 1);

// True iff every run turned out as expected (positives pass, controls
// fail).
bool all_as_expected(const std::vector<VerificationRun>& runs);

// --- transform checks ---------------------------------------------------

struct TransformPoint {
  double arg = 0.0;
  std::complex<double> mc;     // Monte Carlo estimate
  double se_re = 0.0;
  double se_im = 0.0;
  std::complex<double> exact;  // closed form
  bool within = false;         // |mc - exact| <= 3 SE componentwise
};

struct TransformCheck {
  std::string id;
  std::string recipe;
  FamilySpec params;
  TransformKind kind = TransformKind::Laplace;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<TransformPoint> points;
  bool pass = false;  // all points within 3 SE
};

// Monte Carlo transform of `recipe_id` draws vs the closed-form transform
// at each grid argument; passes iff every point is within 3 standard
// errors componentwise.
TransformCheck run_transform_check(const std::string& recipe_id,
                                   const FamilySpec& target,
                                   TransformKind kind,
                                   const std::vector<double>& grid,
                                   std::size_t n, std::uint64_t seed,
                                   const EvalPolicy& policy = EvalPolicy{});

// The fixed acceptance suite: every Mittag-Leffler recipe against the
// Laplace transform 1/(1+s^d) at s in {0.25,0.5,1,2,4} for
// d in {0.3,0.5,0.8}; every Linnik recipe against the characteristic
// function 1/(1+|t|^a) at t in {0.5,1,2} for a in {0.6,1.0,1.4,2.0}; both
// symmetrised-ML recipes against their closed characteristic function.
std::vector<TransformCheck> run_transform_suite(
    std::size_t n = 100000, const EvalPolicy& policy = EvalPolicy{},
    int threads = 1);

// --- tail checks ----------------------------------------------------------

struct TailCandidate {
  std::string name;      // e.g. "alpha" or "alpha/2"
  double exponent = 0.0;
  double constant = 0.0;  // survival constant when known, else 0
};

struct TailCheck {
  std::string id;
  FamilySpec params;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  stats::TailEstimate estimate;
  std::vector<TailCandidate> candidates;  // competing power laws
  std::string supported;                  // candidate closest to the fit
  bool pass = false;
  std::string note;
};

// Fits the log-survival slope on the upper-order-statistic window and
// compares it with the analytic tail law.  For the Linnik family two
// candidate exponents (alpha and alpha/2) are reported and the fit must
// support the alpha candidate; for other heavy-tailed families the fitted
// exponent must land within 10% of the analytic one.  Throws EvalError for
// families without a power tail.
TailCheck run_tail_check(const FamilySpec& spec, std::size_t n,
                         std::uint64_t seed,
                         const EvalPolicy& policy = EvalPolicy{},
                         int threads = 1);

// Fixed tail acceptance suite: MittagLeffler(0.5), HDelta(0.8),
// Linnik(1.0), Linnik(1.4).
std::vector<TailCheck> run_tail_suite(std::size_t n = 1000000,
                                      const EvalPolicy& policy = EvalPolicy{},
                                      int threads = 1);

// --- JSON -----------------------------------------------------------------

std::string to_json(const std::vector<VerificationRun>& runs);
std::string to_json(const std::vector<TransformCheck>& checks);
std::string to_json(const std::vector<TailCheck>& checks);

}  // namespace heavytail::verify
