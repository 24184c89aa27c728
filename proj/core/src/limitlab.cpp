#include "heavytail/limitlab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "heavytail/analytics.hpp"
#include "heavytail/samplers.hpp"
#include "heavytail/serialize.hpp"
#include "heavytail/stats.hpp"

namespace heavytail::limitlab {

namespace {

// Deterministic sharding: fixed rep chunks, one substream per
// (rung, chunk), so results are independent of the worker count.
constexpr std::size_t kRepChunk = 1024;

// Walks longer than this switch from the literal step-by-step walk to the
// exact endpoint draw plus the Brownian conditional-extremum bridge (the
// diffusion-scale approximation is O(N^{-1/2}) and only ever applied when
// N > 10^5).
constexpr double kLiteralWalkCap = 100000.0;

// Gaussian block count for the max-abs functional when N exceeds the
// literal cap (no closed two-sided bridge).
constexpr int kAbsBlocks = 4096;

const samplers::Recipe& mixing_recipe(const FamilySpec& mixing,
                                      const std::string& recipe_id) {
  if (!recipe_id.empty()) return samplers::require_recipe(recipe_id);
  for (const auto& r : samplers::recipe_registry()) {
    if (r.target == mixing.family && r.valid(mixing)) return r;
  }
  throw std::invalid_argument("no sampler recipe for mixing law " +
                              mixing.to_string());
}

}  // namespace

IndexBuilder IndexBuilder::constant_one() {
  IndexBuilder b;
  b.kind = Kind::MixedPoisson;
  b.constant = true;
  return b;
}

IndexBuilder IndexBuilder::mixed_poisson(const FamilySpec& mixing,
                                         double scale, bool reciprocal) {
  IndexBuilder b;
  b.kind = Kind::MixedPoisson;
  b.constant = false;
  b.mixing = mixing;
  b.recipe = mixing_recipe(mixing, "").id;
  b.scale = scale;
  b.reciprocal = reciprocal;
  return b;
}

IndexBuilder IndexBuilder::geometric_stable(double delta, double scale) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument(
        "geometric_stable: delta must lie in (0,1]");
  }
  IndexBuilder b;
  b.kind = Kind::GeometricStable;
  b.delta = delta;
  b.scale = scale;
  return b;
}

double IndexBuilder::draw(double n, RngStream& rng) const {
  if (kind == Kind::GeometricStable) {
    // N = floor(scale * n^{1-1/d} * sum_{j<=V} Y_j) with V ~ Geom(1/n) and
    // Y_j iid positive stable S(d).  By strict stability the sum equals
    // V^{1/d} S(d) in distribution, which is how it is drawn.
    const double v = rng.geometric(1.0 / n);
    const double s = rng.positive_stable(delta);
    const double raw = scale * std::pow(n, 1.0 - 1.0 / delta) *
                       std::pow(v, 1.0 / delta) * s;
    return std::floor(std::max(0.0, raw));
  }
  double mean = n * scale;
  if (!constant) {
    const auto& rec = mixing_recipe(mixing, recipe);
    const double u = rec.draw(mixing, rng);
    mean = reciprocal ? mean / u : mean * u;
  }
  return rng.poisson(mean);
}

std::string IndexBuilder::describe() const {
  char buf[160];
  if (kind == Kind::GeometricStable) {
    std::snprintf(buf, sizeof(buf), "geometric-stable(delta=%g, scale=%g)",
                  delta, scale);
    return buf;
  }
  if (constant) return "mixed-poisson(U=1)";
  std::snprintf(buf, sizeof(buf), "mixed-poisson(U=%g%s%s)", scale,
                reciprocal ? "/" : "*", mixing.to_string().c_str());
  return buf;
}

std::string SummandModel::describe() const {
  return law == SummandLaw::Rademacher ? "rademacher"
                                       : "centered-exponential";
}

namespace {

// Exact sum of N iid summands (Rademacher via one binomial draw; centered
// exponential via one gamma draw).
double summand_sum(const SummandModel& m, double n_terms, RngStream& rng) {
  if (n_terms <= 0.0) return 0.0;
  if (m.law == SummandLaw::Rademacher) {
    return 2.0 * rng.binomial(n_terms, 0.5) - n_terms;
  }
  return rng.gamma(n_terms) - n_terms;
}

double one_step(const SummandModel& m, RngStream& rng) {
  return m.law == SummandLaw::Rademacher ? rng.sign()
                                         : rng.exponential() - 1.0;
}

struct RepCounters {
  double redraws = 0.0;
  double small_index = 0.0;  // draws with N <= 10
  double draws = 0.0;        // total index draws
};

// Extremum of the running sums S_1..S_N.
double walk_extremum(const SummandModel& m, double n_terms, ExtremalMode mode,
                     RngStream& rng) {
  if (n_terms <= 0.0) return 0.0;
  if (n_terms <= kLiteralWalkCap) {
    const auto steps = static_cast<std::int64_t>(n_terms);
    double s = 0.0, lo = 0.0, hi = 0.0;
    for (std::int64_t i = 0; i < steps; ++i) {
      s += one_step(m, rng);
      hi = std::max(hi, s);
      lo = std::min(lo, s);
    }
    switch (mode) {
      case ExtremalMode::Max:
        return hi;
      case ExtremalMode::Min:
        return lo;
      case ExtremalMode::Abs:
        return std::max(hi, -lo);
    }
    return hi;
  }
  if (mode == ExtremalMode::Abs) {
    // No closed two-sided bridge: coarse Gaussian block walk (CLT within
    // blocks; block discretization bias O(1/sqrt(kAbsBlocks)) relative).
    const double block_sd = std::sqrt(n_terms / kAbsBlocks);
    double s = 0.0, m_abs = 0.0;
    for (int b = 0; b < kAbsBlocks; ++b) {
      s += block_sd * rng.normal();
      m_abs = std::max(m_abs, std::fabs(s));
    }
    return m_abs;
  }
  // Exact endpoint, then the Brownian conditional extremum given the
  // endpoint: P(max >= m | S_N = s) = exp(-2 m (m - s) / N) for m >=
  // max(0, s), inverted at a uniform draw.
  const double endpoint = summand_sum(m, n_terms, rng);
  const double u = rng.next_u01();
  const double root =
      std::sqrt(endpoint * endpoint - 2.0 * n_terms * std::log(u));
  if (mode == ExtremalMode::Max) return 0.5 * (endpoint + root);
  return 0.5 * (endpoint - root);
}

using ValueFn = std::function<double(double, RngStream&, RepCounters&)>;

struct RunSpec {
  std::string experiment;
  std::string mode;
  std::string builder;
  std::string summands;
};

LimitExperimentReport run_ladder(const RunSpec& rs, const FamilySpec& target,
                                 const std::vector<double>& ladder,
                                 std::size_t reps, std::uint64_t seed,
                                 const EvalPolicy& policy, int threads,
                                 bool reflected_target, const ValueFn& fn) {
  if (ladder.empty()) throw std::invalid_argument("ladder must be nonempty");
  if (!std::is_sorted(ladder.begin(), ladder.end()) ||
      std::adjacent_find(ladder.begin(), ladder.end()) != ladder.end()) {
    throw std::invalid_argument("ladder must be strictly increasing");
  }
  if (reps == 0) throw std::invalid_argument("reps must be >= 1");

  LimitExperimentReport report;
  report.experiment = rs.experiment;
  report.mode = rs.mode;
  report.builder = rs.builder;
  report.summands = rs.summands;
  report.target = target;
  report.ladder_n = ladder;
  report.reps = reps;
  report.seed = seed;
  report.final_threshold = default_threshold(rs.experiment, target);

  const CachedCdf F(target, policy);
  std::function<double(double)> cdf;
  if (reflected_target) {
    cdf = [&F](double x) { return 1.0 - F(-x); };
  } else {
    cdf = [&F](double x) { return F(x); };
  }

  for (std::size_t ri = 0; ri < ladder.size(); ++ri) {
    const double n = ladder[ri];
    std::vector<double> values(reps);
    const std::size_t shards = (reps + kRepChunk - 1) / kRepChunk;
    std::vector<RepCounters> counters(shards);

    auto run_shard = [&](std::size_t shard) {
      RngStream rng(seed, substream(ri, shard));
      const std::size_t lo = shard * kRepChunk;
      const std::size_t hi = std::min(lo + kRepChunk, reps);
      for (std::size_t i = lo; i < hi; ++i) {
        values[i] = fn(n, rng, counters[shard]);
      }
    };
    if (threads <= 1 || shards <= 1) {
      for (std::size_t s = 0; s < shards; ++s) run_shard(s);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      const std::size_t workers =
          std::min<std::size_t>(static_cast<std::size_t>(threads), shards);
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (;;) {
            const std::size_t s = next.fetch_add(1);
            if (s >= shards) return;
            run_shard(s);
          }
        });
      }
      for (auto& t : pool) t.join();
    }

    RepCounters total;
    for (const auto& c : counters) {
      total.redraws += c.redraws;
      total.small_index += c.small_index;
      total.draws += c.draws;
    }
    LadderPoint pt;
    pt.n = n;
    pt.ks = stats::ks_one_sample(std::move(values), cdf, 0.05).statistic;
    pt.resampled_zero = total.redraws;
    pt.p_index_le_10 = total.draws > 0 ? total.small_index / total.draws : 0;
    report.points.push_back(pt);
  }

  report.nonincreasing = true;
  for (std::size_t i = 1; i < report.points.size(); ++i) {
    if (report.points[i].ks > report.points[i - 1].ks + 0.01) {
      report.nonincreasing = false;
    }
  }
  report.final_ok = report.points.back().ks <= report.final_threshold;
  report.pass = report.nonincreasing && report.final_ok;
  return report;
}

double count_index(const IndexBuilder& builder, double n, RngStream& rng,
                   RepCounters& c) {
  const double N = builder.draw(n, rng);
  c.draws += 1.0;
  if (N <= 10.0) c.small_index += 1.0;
  return N;
}

}  // namespace

IndexBuilder default_builder(const std::string& experiment,
                             const FamilySpec& target) {
  const bool statistic = experiment == "statistic";
  if (experiment == "random-sum" || statistic) {
    switch (target.family) {
      case Family::Normal:
        return IndexBuilder::constant_one();
      case Family::Linnik:
        // N_n/n => 2 M(a/2) (random sums) or its reciprocal (statistics).
        return IndexBuilder::mixed_poisson(
            FamilySpec::mittag_leffler(0.5 * target.alpha()),
            statistic ? 0.5 : 2.0, statistic);
      case Family::TwoSidedML:
        return IndexBuilder::mixed_poisson(
            FamilySpec::h_delta(target.delta()), 1.0, statistic);
      default:
        break;
    }
  } else if (experiment == "extremal-sums") {
    switch (target.family) {
      case Family::HalfNormal:
        return IndexBuilder::constant_one();
      case Family::MittagLeffler:
        return IndexBuilder::mixed_poisson(
            FamilySpec::h_delta(target.delta()));
      case Family::OneSidedLinnik:
        return IndexBuilder::mixed_poisson(
            FamilySpec::mittag_leffler(0.5 * target.alpha()), 2.0);
      default:
        break;
    }
  } else if (experiment == "min-extreme") {
    switch (target.family) {
      case Family::Weibull:
        if (target.gamma() == 1.0) return IndexBuilder::constant_one();
        break;
      case Family::MittagLeffler:
        return IndexBuilder::mixed_poisson(
            FamilySpec::stable_ratio(target.delta()));
      case Family::OneSidedLinnik:
        return IndexBuilder::mixed_poisson(
            FamilySpec::ratio_q(target.alpha(), 2.0));
      default:
        break;
    }
  } else {
    throw std::invalid_argument("unknown experiment '" + experiment + "'");
  }
  throw std::invalid_argument("no default index builder for experiment '" +
                              experiment + "' with target " +
                              target.to_string());
}

double default_threshold(const std::string& experiment,
                         const FamilySpec& target) {
  // Final-rung bounds fixed by the committed pilot ladders
  // (tests/fixtures/limit_ladder_pilot.json): measured distance at the
  // n = 10^4 rung plus sampling headroom.  The extremal Mittag-Leffler
  // row keeps the a-priori 0.03 even though the pilot measures ~0.10 at
  // delta = 0.5: the small-index mass P(N <= 10) ~ 0.11 of the H(0.5)
  // mixing law leaves a walk-lattice atom near zero that dies off only
  // like n^{-1/4}, so the rung-10^4 distance is intrinsic and the row is
  // reported as a genuine failure rather than papered over.
  if (experiment == "random-sum") {
    return target.family == Family::TwoSidedML ? 0.05 : 0.02;
  }
  if (experiment == "statistic") {
    switch (target.family) {
      case Family::Normal:
        return 0.02;
      case Family::TwoSidedML:
        return 0.04;
      default:
        return 0.03;
    }
  }
  if (experiment == "extremal-sums") {
    switch (target.family) {
      case Family::HalfNormal:
        return 0.02;
      case Family::OneSidedLinnik:
        return 0.04;
      default:
        return 0.03;
    }
  }
  if (experiment == "min-extreme") {
    return target.family == Family::Weibull ? 0.02 : 0.05;
  }
  return 0.05;
}

LimitExperimentReport run_random_sum(const SummandModel& summands,
                                     const IndexBuilder& builder,
                                     const FamilySpec& target,
                                     const std::vector<double>& ladder,
                                     std::size_t reps, std::uint64_t seed,
                                     const EvalPolicy& policy, int threads) {
  const double sigma = summands.sigma();
  ValueFn fn = [&summands, &builder, sigma](double n, RngStream& rng,
                                            RepCounters& c) {
    const double N = count_index(builder, n, rng, c);
    return summand_sum(summands, N, rng) / (sigma * std::sqrt(n));
  };
  return run_ladder({"random-sum", "", builder.describe(),
                     summands.describe()},
                    target, ladder, reps, seed, policy, threads, false, fn);
}

LimitExperimentReport run_statistic(const SummandModel& summands,
                                    const IndexBuilder& builder,
                                    const FamilySpec& target,
                                    const std::vector<double>& ladder,
                                    std::size_t reps, std::uint64_t seed,
                                    const EvalPolicy& policy, int threads) {
  const double sigma = summands.sigma();
  ValueFn fn = [&summands, &builder, sigma](double n, RngStream& rng,
                                            RepCounters& c) {
    double N = count_index(builder, n, rng, c);
    while (N < 1.0) {  // sample mean undefined on an empty sample
      c.redraws += 1.0;
      N = count_index(builder, n, rng, c);
    }
    const double mean = summand_sum(summands, N, rng) / N;
    return std::sqrt(n) * mean / sigma;
  };
  return run_ladder({"statistic", "", builder.describe(),
                     summands.describe()},
                    target, ladder, reps, seed, policy, threads, false, fn);
}

LimitExperimentReport run_extremal_sums(const SummandModel& summands,
                                        const IndexBuilder& builder,
                                        ExtremalMode mode,
                                        const FamilySpec& target,
                                        const std::vector<double>& ladder,
                                        std::size_t reps, std::uint64_t seed,
                                        const EvalPolicy& policy,
                                        int threads) {
  const double sigma = summands.sigma();
  ValueFn fn = [&summands, &builder, mode, sigma](double n, RngStream& rng,
                                                  RepCounters& c) {
    const double N = count_index(builder, n, rng, c);
    return walk_extremum(summands, N, mode, rng) / (sigma * std::sqrt(n));
  };
  const char* mode_name = mode == ExtremalMode::Max   ? "max"
                          : mode == ExtremalMode::Min ? "min"
                                                      : "abs";
  return run_ladder({"extremal-sums", mode_name, builder.describe(),
                     summands.describe()},
                    target, ladder, reps, seed, policy, threads,
                    mode == ExtremalMode::Min, fn);
}

LimitExperimentReport run_min_extreme(const IndexBuilder& builder,
                                      const FamilySpec& target,
                                      const std::vector<double>& ladder,
                                      std::size_t reps, std::uint64_t seed,
                                      const EvalPolicy& policy, int threads) {
  if (builder.kind != IndexBuilder::Kind::MixedPoisson) {
    throw std::invalid_argument(
        "run_min_extreme: requires a MixedPoisson (Cox) index builder");
  }
  ValueFn fn = [&builder](double d, RngStream& rng, RepCounters& c) {
    double N = count_index(builder, d, rng, c);
    while (N < 1.0) {  // min over an empty sample is undefined
      c.redraws += 1.0;
      N = count_index(builder, d, rng, c);
    }
    // min of N iid standard exponentials is exactly Exp(N).
    const double min_value = rng.exponential() / N;
    const double b = -std::log1p(-1.0 / d);
    return min_value / b;
  };
  return run_ladder({"min-extreme", "", builder.describe(), ""}, target,
                    ladder, reps, seed, policy, threads, false, fn);
}

std::string to_json(const LimitExperimentReport& report) {
  nlohmann::json j;
  j["schema"] = serialize::kSchemaVersion;
  j["kind"] = "limit-experiment";
  j["experiment"] = report.experiment;
  if (!report.mode.empty()) j["mode"] = report.mode;
  j["builder"] = report.builder;
  if (!report.summands.empty()) j["summands"] = report.summands;
  j["target"] = {{"family", family_name(report.target.family)},
                 {"spec", report.target.to_string()}};
  j["ladder"] = report.ladder_n;
  j["reps"] = report.reps;
  j["seed"] = report.seed;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : report.points) {
    pts.push_back({{"n", p.n},
                   {"ks", p.ks},
                   {"resampled_zero", p.resampled_zero},
                   {"p_index_le_10", p.p_index_le_10}});
  }
  j["points"] = std::move(pts);
  j["final_threshold"] = report.final_threshold;
  j["nonincreasing"] = report.nonincreasing;
  j["final_ok"] = report.final_ok;
  j["pass"] = report.pass;
  return j.dump(2);
}

std::string to_csv(const LimitExperimentReport& report) {
  std::string out = "n,ks\n";
  char buf[80];
  for (const auto& p : report.points) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.n, p.ks);
    out += buf;
  }
  return out;
}

}  // namespace heavytail::limitlab
