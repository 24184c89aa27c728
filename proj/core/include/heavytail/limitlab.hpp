// Limit-theorem laboratory: random sums, asymptotically normal statistics
// with random sample sizes, extremal random sums, and minimum extreme
// order statistics with Cox-process sample sizes.
//
// Each experiment simulates the normalized functional over a ladder of
// scales n, estimates the Kolmogorov-Smirnov distance to the analytic
// target CDF per rung, and reports whether the distances decrease along
// the ladder (within a noise band) and land under the rung-10^4
// threshold.
//
// Index constructions (the two concrete random-index models):
//   GeometricStable:  N_n = floor(scale * n^{1-1/d} * sum_{j<=V} Y_j),
//                     V ~ Geometric(1/n), Y_j iid positive stable S(d);
//                     the stable sum collapses exactly to V^{1/d} S(d),
//                     which is how it is drawn.  N_n/n => scale * M(d).
//   MixedPoisson:     N_n ~ Poisson(n * scale * U) (or scale / U with
//                     `reciprocal`), U drawn from a sampler recipe;
//                     N_n/n => scale * U.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heavytail/eval_policy.hpp"
#include "heavytail/families.hpp"
#include "heavytail/rng.hpp"

namespace heavytail::limitlab {

struct IndexBuilder {
  enum class Kind { GeometricStable, MixedPoisson };

  Kind kind = Kind::MixedPoisson;
  // MixedPoisson fields (U == 1 when `constant`):
  bool constant = true;
  FamilySpec mixing;        // law of U when not constant
  std::string recipe;       // sampler recipe drawing U
  bool reciprocal = false;  // mean = n * scale / U instead of n * scale * U
  // GeometricStable field:
  double delta = 0.5;
  // Common scale multiplier on the index mean.
  double scale = 1.0;

  // U == 1: N_n ~ Poisson(n).
  static IndexBuilder constant_one();
  static IndexBuilder mixed_poisson(const FamilySpec& mixing,
                                    double scale = 1.0,
                                    bool reciprocal = false);
  static IndexBuilder geometric_stable(double delta, double scale = 1.0);

  // One nonnegative index at scale n.
  double draw(double n, RngStream& rng) const;

  std::string describe() const;
};

enum class SummandLaw {
  Rademacher,           // +-1 equiprobable, sigma = 1
  CenteredExponential,  // Exp(1) - 1, sigma = 1
};

struct SummandModel {
  SummandLaw law = SummandLaw::Rademacher;
  double sigma() const { return 1.0; }
  std::string describe() const;
};

enum class ExtremalMode { Max, Min, Abs };

struct LadderPoint {
  double n = 0.0;             // ladder scale
  double ks = 0.0;            // KS distance to the target CDF
  double resampled_zero = 0;  // N = 0 draws redrawn (where applicable)
  double p_index_le_10 = 0;   // empirical P(N_n <= 10)
};

struct LimitExperimentReport {
  std::string experiment;  // random-sum | statistic | extremal-sums | min-extreme
  std::string mode;        // max | min | abs for extremal-sums, else ""
  std::string builder;
  std::string summands;    // "" for min-extreme
  FamilySpec target;
  std::vector<double> ladder_n;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<LadderPoint> points;
  double final_threshold = 0.0;  // pass bound for the last rung
  bool nonincreasing = false;    // KS nonincreasing within the 0.01 band
  bool final_ok = false;         // last-rung KS <= final_threshold
  bool pass = false;             // nonincreasing && final_ok
};

inline const std::vector<double>& default_ladder() {
  static const std::vector<double> ladder{100.0, 1000.0, 10000.0};
  return ladder;
}
inline constexpr std::size_t kDefaultReps = 10000;

// The default index construction for an (experiment, target) pair:
//   random-sum:    Linnik(a) <- U = 2 M(a/2); TwoSidedML(d) <- U = H(d);
//                  Normal    <- U = 1
//   statistic:     as random-sum but with the reciprocal mixing law
//   extremal-sums: MittagLeffler(d) <- U = H(d);
//                  OneSidedLinnik(a) <- U = 2 M(a/2); HalfNormal <- U = 1
//   min-extreme:   MittagLeffler(d) <- V = S(d)/S'(d);
//                  OneSidedLinnik(a) <- V = Q(a,2); Weibull(1) <- V = 1
// Throws std::invalid_argument for unsupported pairings.
IndexBuilder default_builder(const std::string& experiment,
                             const FamilySpec& target);

// Threshold for the final (n = 10^4) rung of the default ladder, from the
// committed pilot fixtures.
double default_threshold(const std::string& experiment,
                         const FamilySpec& target);

// S*_{N_n} / (sigma sqrt(n)) vs the target CDF.
LimitExperimentReport run_random_sum(const SummandModel& summands,
                                     const IndexBuilder& builder,
                                     const FamilySpec& target,
                                     const std::vector<double>& ladder,
                                     std::size_t reps, std::uint64_t seed,
                                     const EvalPolicy& policy = {},
                                     int threads = 1);

// sqrt(n) * (sample mean of N_n summands) / sigma vs the target CDF;
// N_n = 0 realizations are redrawn and counted.
LimitExperimentReport run_statistic(const SummandModel& summands,
                                    const IndexBuilder& builder,
                                    const FamilySpec& target,
                                    const std::vector<double>& ladder,
                                    std::size_t reps, std::uint64_t seed,
                                    const EvalPolicy& policy = {},
                                    int threads = 1);

// max / min / max-abs of the running sums S_1..S_{N_n}, divided by
// sigma sqrt(n).  Min mode is checked against the reflected target CDF
// x -> 1 - F(-x).
LimitExperimentReport run_extremal_sums(const SummandModel& summands,
                                        const IndexBuilder& builder,
                                        ExtremalMode mode,
                                        const FamilySpec& target,
                                        const std::vector<double>& ladder,
                                        std::size_t reps, std::uint64_t seed,
                                        const EvalPolicy& policy = {},
                                        int threads = 1);

// (min of N_k standard-exponential observations) / b_k with
// b_k = -log1p(-1/d_k) and N_k ~ Poisson(d_k * V); V is the builder's
// mixing draw (GeometricStable builders are not meaningful here).
// N_k = 0 realizations are redrawn and counted.
LimitExperimentReport run_min_extreme(const IndexBuilder& builder,
                                      const FamilySpec& target,
                                      const std::vector<double>& ladder,
                                      std::size_t reps, std::uint64_t seed,
                                      const EvalPolicy& policy = {},
                                      int threads = 1);

// JSON document and two-column (n, ks) CSV for plotting.
std::string to_json(const LimitExperimentReport& report);
std::string to_csv(const LimitExperimentReport& report);

}  // namespace heavytail::limitlab
