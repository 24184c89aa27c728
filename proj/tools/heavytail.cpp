// heavytail: single-binary laboratory for the Mittag-Leffler and Linnik
// distribution families.
//
//   eval    closed-form pdf/cdf/quantile/transform/tail evaluation
//   sample  draw from a registered sampling recipe
//   verify  distributional-identity registry, transform and tail suites
//   limit   limit-theorem ladder experiments
//   tails   Monte Carlo tail-exponent fit for one family
//
// Exit codes: 0 success / all checks pass, 1 check failure, 2 usage error.

#include <cinttypes>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heavytail/analytics.hpp"
#include "heavytail/families.hpp"
#include "heavytail/limitlab.hpp"
#include "heavytail/mittag_leffler.hpp"
#include "heavytail/samplers.hpp"
#include "heavytail/serialize.hpp"
#include "heavytail/verify.hpp"

namespace {

using namespace heavytail;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- shared option helpers ------------------------------------------------

struct ParamFlags {
  std::optional<double> delta, alpha, gamma, rho, p, alpha_prime;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
  cmd->add_option("--delta", f.delta, "Mittag-Leffler-type index in (0,1]");
  cmd->add_option("--alpha", f.alpha, "Linnik/stable-type index");
  cmd->add_option("--gamma", f.gamma, "Weibull shape (> 0)");
  cmd->add_option("--rho", f.rho, "Kozubowski kernel index in (0,1)");
  cmd->add_option("--p", f.p, "geometric success probability in (0,1]");
  cmd->add_option("--alpha-prime", f.alpha_prime,
                  "second index of the ratio-Q law");
}

// Builds a validated FamilySpec from the long-name flags, rejecting any
// flag the family does not take (the message names the offending flag).
FamilySpec build_spec(Family fam, const ParamFlags& f) {
  struct Need {
    const char* flag;
    const std::optional<double>* value;
  };
  auto make = [&](std::initializer_list<Need> needs,
                  auto&& factory) -> FamilySpec {
    const Need known[] = {
        {"--delta", &f.delta},       {"--alpha", &f.alpha},
        {"--gamma", &f.gamma},       {"--rho", &f.rho},
        {"--p", &f.p},               {"--alpha-prime", &f.alpha_prime},
    };
    for (const auto& k : known) {
      bool applicable = false;
      for (const auto& n : needs) {
        if (std::string(n.flag) == k.flag) applicable = true;
      }
      if (!applicable && k.value->has_value()) {
        throw UsageError(std::string(k.flag) + " does not apply to family " +
                         family_name(fam));
      }
    }
    for (const auto& n : needs) {
      if (!n.value->has_value()) {
        throw UsageError(std::string(n.flag) + " is required for family " +
                         family_name(fam));
      }
    }
    try {
      return factory();
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string(needs.size() ? needs.begin()->flag
                                                : "--family") +
                       ": " + e.what());
    }
  };

  switch (fam) {
    case Family::MittagLeffler:
      return make({{"--delta", &f.delta}},
                  [&] { return FamilySpec::mittag_leffler(*f.delta); });
    case Family::Linnik:
      return make({{"--alpha", &f.alpha}},
                  [&] { return FamilySpec::linnik(*f.alpha); });
    case Family::TwoSidedML:
      return make({{"--delta", &f.delta}},
                  [&] { return FamilySpec::two_sided_ml(*f.delta); });
    case Family::OneSidedLinnik:
      return make({{"--alpha", &f.alpha}},
                  [&] { return FamilySpec::one_sided_linnik(*f.alpha); });
    case Family::Weibull:
      return make({{"--gamma", &f.gamma}},
                  [&] { return FamilySpec::weibull(*f.gamma); });
    case Family::Exponential:
      return make({}, [] { return FamilySpec::exponential(); });
    case Family::Rayleigh:
      return make({}, [] { return FamilySpec::rayleigh(); });
    case Family::Laplace:
      return make({}, [] { return FamilySpec::laplace(); });
    case Family::Normal:
      return make({}, [] { return FamilySpec::normal(); });
    case Family::HalfNormal:
      return make({}, [] { return FamilySpec::half_normal(); });
    case Family::PositiveStable:
      return make({{"--delta", &f.delta}},
                  [&] { return FamilySpec::positive_stable(*f.delta); });
    case Family::SymmetricStable:
      return make({{"--alpha", &f.alpha}},
                  [&] { return FamilySpec::symmetric_stable(*f.alpha); });
    case Family::KozubowskiK:
      return make({{"--rho", &f.rho}},
                  [&] { return FamilySpec::kozubowski_k(*f.rho); });
    case Family::RatioQ:
      return make({{"--alpha", &f.alpha},
                   {"--alpha-prime", &f.alpha_prime}},
                  [&] {
                    return FamilySpec::ratio_q(*f.alpha, *f.alpha_prime);
                  });
    case Family::StableRatio:
      return make({{"--alpha", &f.alpha}},
                  [&] { return FamilySpec::stable_ratio(*f.alpha); });
    case Family::HDelta:
      return make({{"--delta", &f.delta}},
                  [&] { return FamilySpec::h_delta(*f.delta); });
    case Family::Geometric:
      return make({{"--p", &f.p}},
                  [&] { return FamilySpec::geometric(*f.p); });
  }
  throw UsageError("--family: unknown family");
}

Family parse_family(const std::string& name) {
  if (auto fam = family_from_name(name)) return *fam;
  std::string known;
  for (int i = 0; i <= static_cast<int>(Family::Geometric); ++i) {
    if (!known.empty()) known += ", ";
    known += family_name(static_cast<Family>(i));
  }
  throw UsageError("--family: unknown family '" + name + "' (known: " +
                   known + ")");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("HEAVYTAIL_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw UsageError(std::string("HEAVYTAIL_SEED: not an integer: '") +
                       env + "'");
    }
    return v;
  }
  return 12345;
}

std::vector<double> parse_grid(const std::string& text) {
  double lo = 0, hi = 0, step = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
      step <= 0 || hi < lo) {
    throw UsageError("--grid: expected lo:hi:step with step > 0, got '" +
                     text + "'");
  }
  const auto count = static_cast<std::size_t>((hi - lo) / step + 1e-9) + 1;
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i) xs[i] = lo + step * double(i);
  return xs;
}

std::vector<double> parse_ladder(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0' || v < 1.0) {
      throw UsageError("--ladder: expected comma-separated scales >= 1, got '"
                       + text + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void write_output(const std::string& content,
                  const std::optional<std::string>& path) {
  if (!path) {
    std::fputs(content.c_str(), stdout);
    if (!content.empty() && content.back() != '\n') std::fputc('\n', stdout);
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out) throw UsageError("--out: cannot open '" + *path + "'");
  out << content;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---- eval ------------------------------------------------------------------

struct EvalOpts {
  std::string family;
  ParamFlags params;
  std::string what = "pdf";
  std::optional<std::string> grid;
  std::optional<double> x, q, s, t, z;
  std::optional<std::string> out;
  std::string format = "csv";
};

int cmd_eval(const EvalOpts& o) {
  const bool is_mlf = o.what == "mlf";
  FamilySpec spec;
  if (is_mlf) {
    if (!o.params.delta) throw UsageError("--delta is required for --what mlf");
    if (!o.family.empty() && o.family != "mittag-leffler") {
      throw UsageError("--family: --what mlf evaluates the Mittag-Leffler "
                       "function E_delta and takes no other family");
    }
    spec = FamilySpec::mittag_leffler(*o.params.delta);
  } else {
    if (o.family.empty()) throw UsageError("--family is required");
    spec = build_spec(parse_family(o.family), o.params);
  }
  const EvalPolicy policy{};

  if (o.what == "tail") {
    const TailLaw law = tail_law(spec);
    if (o.format == "json") {
      nlohmann::json j{{"schema", serialize::kSchemaVersion},
                       {"kind", "eval-table"},
                       {"family", family_name(spec.family)},
                       {"params", nlohmann::json::parse(
                                      serialize::params_json(spec))},
                       {"what", "tail"},
                       {"columns", {"exponent", "constant"}},
                       {"rows", {{law.exponent, law.constant}}}};
      write_output(j.dump(2), o.out);
    } else {
      write_output("exponent,constant\n" + fmt17(law.exponent) + "," +
                       fmt17(law.constant) + "\n",
                   o.out);
    }
    return 0;
  }

  // Argument list: either --grid or the single point flag for `what`.
  struct PointFlag {
    const char* flag;
    const std::optional<double>& value;
  };
  const PointFlag by_what = o.what == "quantile" ? PointFlag{"--q", o.q}
                            : o.what == "laplace" ? PointFlag{"--s", o.s}
                            : o.what == "charfun" ? PointFlag{"--t", o.t}
                            : is_mlf              ? PointFlag{"--z", o.z}
                                                  : PointFlag{"--x", o.x};
  for (const auto& [flag, value] :
       {PointFlag{"--x", o.x}, PointFlag{"--q", o.q}, PointFlag{"--s", o.s},
        PointFlag{"--t", o.t}, PointFlag{"--z", o.z}}) {
    if (value.has_value() && std::string(flag) != by_what.flag) {
      throw UsageError(std::string(flag) + " does not apply to --what " +
                       o.what);
    }
  }
  std::vector<double> args;
  if (o.grid && by_what.value) {
    throw UsageError("--grid: give either --grid or a single point, not both");
  }
  if (o.grid) {
    args = parse_grid(*o.grid);
  } else if (by_what.value) {
    args = {*by_what.value};
  } else {
    throw UsageError(std::string(by_what.flag) +
                     " (or --grid) is required for --what " + o.what);
  }

  const std::string arg_name = by_what.flag + 2;  // strip "--"
  std::vector<std::string> columns{arg_name};
  std::vector<std::vector<double>> rows;
  if (o.what == "pdf") {
    columns.push_back("pdf");
    for (double v : args) rows.push_back({v, pdf(spec, v, policy)});
  } else if (o.what == "cdf") {
    columns.push_back("cdf");
    for (double v : args) rows.push_back({v, cdf(spec, v, policy)});
  } else if (o.what == "both") {
    columns.push_back("pdf");
    columns.push_back("cdf");
    for (double v : args)
      rows.push_back({v, pdf(spec, v, policy), cdf(spec, v, policy)});
  } else if (o.what == "quantile") {
    columns.push_back("quantile");
    for (double v : args) rows.push_back({v, quantile(spec, v, policy)});
  } else if (o.what == "laplace") {
    columns.push_back("laplace");
    for (double v : args)
      rows.push_back(
          {v, transform(spec, TransformKind::Laplace, v).real()});
  } else if (o.what == "charfun") {
    columns.push_back("charfun");
    for (double v : args)
      rows.push_back(
          {v, transform(spec, TransformKind::CharFn, v).real()});
  } else if (is_mlf) {
    columns.push_back("mlf");
    for (double v : args) rows.push_back({v, ml_e(spec.delta(), v, policy)});
  } else {
    throw UsageError("--what: unknown value '" + o.what +
                     "' (pdf, cdf, both, quantile, laplace, charfun, tail, "
                     "mlf)");
  }

  if (!o.grid && rows.size() == 1 && !o.out) {
    // single point: bare value
    std::string line;
    for (std::size_t c = 1; c < columns.size(); ++c)
      line += (c > 1 ? "," : "") + fmt17(rows[0][c]);
    write_output(line + "\n", std::nullopt);
    return 0;
  }

  if (o.format == "json") {
    nlohmann::json j{{"schema", serialize::kSchemaVersion},
                     {"kind", "eval-table"},
                     {"family", family_name(spec.family)},
                     {"params",
                      nlohmann::json::parse(serialize::params_json(spec))},
                     {"what", o.what},
                     {"columns", columns},
                     {"rows", rows}};
    write_output(j.dump(2), o.out);
  } else {
    std::string csv;
    for (std::size_t c = 0; c < columns.size(); ++c)
      csv += (c ? "," : "") + columns[c];
    csv += "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c)
        csv += (c ? "," : "") + fmt17(row[c]);
      csv += "\n";
    }
    write_output(csv, o.out);
  }
  return 0;
}

// ---- sample ----------------------------------------------------------------

struct SampleOpts {
  std::string recipe;
  ParamFlags params;
  std::uint64_t n = 0;
  std::optional<std::uint64_t> seed;
  std::uint64_t stream = 0;
  int threads = 1;
  bool summary = false;
  std::optional<std::string> out;
  std::string format = "csv";
};

int cmd_sample(const SampleOpts& o) {
  const samplers::Recipe* recipe = samplers::find_recipe(o.recipe);
  if (recipe == nullptr) {
    std::string ids;
    for (const auto& r : samplers::recipe_registry()) {
      if (!ids.empty()) ids += ", ";
      ids += r.id;
    }
    throw UsageError("--recipe: unknown recipe '" + o.recipe +
                     "'; registered recipes: " + ids);
  }
  const FamilySpec spec = build_spec(recipe->target, o.params);
  if (!recipe->valid(spec)) {
    throw UsageError("--recipe: " + o.recipe +
                     " does not cover parameters " + spec.to_string());
  }
  const samplers::SampleBatch batch = samplers::sample(
      o.recipe, spec, o.n, resolve_seed(o.seed), o.stream, o.threads);
  write_output(o.format == "json" ? serialize::to_json(batch, !o.summary)
                                  : serialize::to_csv(batch),
               o.out);
  return 0;
}

// ---- verify ----------------------------------------------------------------

struct VerifyOpts {
  bool all = false;
  bool list = false;
  std::optional<std::string> identity;
  std::size_t n = 100000;
  int seeds = 20;
  double alpha = 1e-3;
  int threads = 1;
  bool with_transforms = false;
  bool with_tails = false;
  std::optional<std::string> out;
  std::optional<std::string> transforms_out;
  std::optional<std::string> tails_out;
};

int cmd_verify(const VerifyOpts& o) {
  if (o.list) {
    for (const auto& id : verify::list_identities()) {
      std::printf("%-36s %s\n", id.id.c_str(), id.statement.c_str());
    }
    return 0;
  }
  bool ok = true;
  std::vector<verify::VerificationRun> runs;
  if (o.identity) {
    runs.push_back(verify::run_identity(*o.identity, o.n, o.seeds, o.alpha,
                                        {}, o.threads));
  } else {
    runs = verify::run_all(o.n, o.seeds, o.alpha, {}, o.threads);
  }
  for (const auto& r : runs) {
    const char* status =
        r.as_expected
            ? (r.expected_pass ? "pass" : "fails as designed (control)")
            : "UNEXPECTED";
    std::printf("%-4s %-36s %zu points: %s\n", r.as_expected ? "ok" : "BAD",
                r.id.c_str(), r.points.size(), status);
  }
  ok = verify::all_as_expected(runs);
  if (o.out) write_output(verify::to_json(runs), o.out);

  if (o.with_transforms) {
    const auto checks = verify::run_transform_suite(o.n, {}, o.threads);
    std::size_t bad = 0;
    for (const auto& c : checks)
      if (!c.pass) ++bad;
    std::printf("transform suite: %zu checks, %zu failing\n", checks.size(),
                bad);
    ok = ok && bad == 0;
    if (o.transforms_out)
      write_output(verify::to_json(checks), o.transforms_out);
  }
  if (o.with_tails) {
    const auto checks = verify::run_tail_suite(1000000, {}, o.threads);
    std::size_t bad = 0;
    for (const auto& c : checks)
      if (!c.pass) ++bad;
    std::printf("tail suite: %zu checks, %zu failing\n", checks.size(), bad);
    ok = ok && bad == 0;
    if (o.tails_out) write_output(verify::to_json(checks), o.tails_out);
  }
  std::printf("verify: %s\n", ok ? "all checks as expected" : "FAILURES");
  return ok ? 0 : 1;
}

// ---- limit -----------------------------------------------------------------

struct LimitOpts {
  std::string experiment;
  ParamFlags params;
  bool control = false;
  std::string mode = "max";
  std::string builder = "default";
  std::string summands = "rademacher";
  std::string ladder = "100,1000,10000";
  std::size_t reps = limitlab::kDefaultReps;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::optional<std::string> out;
  std::optional<std::string> csv;
  std::string format = "csv";
};

int cmd_limit(const LimitOpts& o) {
  const bool rs = o.experiment == "random-sum";
  const bool st = o.experiment == "statistic";
  const bool ex = o.experiment == "extremal-sums";
  const bool me = o.experiment == "min-extreme";
  if (!rs && !st && !ex && !me) {
    throw UsageError("--experiment: unknown experiment '" + o.experiment +
                     "' (random-sum, statistic, extremal-sums, min-extreme)");
  }

  // Target resolution: --control, --alpha or --delta.
  FamilySpec target;
  const int picks = int(o.control) + int(o.params.alpha.has_value()) +
                    int(o.params.delta.has_value());
  if (picks != 1) {
    throw UsageError(
        "--experiment: give exactly one of --control, --alpha (Linnik-type "
        "target) or --delta (Mittag-Leffler-type target)");
  }
  if (o.control) {
    target = rs || st ? FamilySpec::normal()
             : ex     ? FamilySpec::half_normal()
                      : FamilySpec::weibull(1.0);
  } else if (o.params.alpha) {
    try {
      target = rs || st ? FamilySpec::linnik(*o.params.alpha)
                        : FamilySpec::one_sided_linnik(*o.params.alpha);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--alpha: ") + e.what());
    }
  } else {
    try {
      target = rs || st ? FamilySpec::two_sided_ml(*o.params.delta)
                        : FamilySpec::mittag_leffler(*o.params.delta);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--delta: ") + e.what());
    }
  }

  limitlab::IndexBuilder builder;
  if (o.builder == "default" || o.builder == "mixed-poisson") {
    builder = limitlab::default_builder(o.experiment, target);
  } else if (o.builder == "geometric-stable") {
    // Only index laws of Mittag-Leffler type have the geometric-stable
    // construction; that is the (random-sum, Linnik) pairing.
    if (!rs || target.family != Family::Linnik) {
      throw UsageError(
          "--builder: geometric-stable indices realise a Mittag-Leffler "
          "mixing law and apply to --experiment random-sum with a Linnik "
          "target");
    }
    builder =
        limitlab::IndexBuilder::geometric_stable(0.5 * target.alpha(), 2.0);
  } else {
    throw UsageError("--builder: unknown builder '" + o.builder +
                     "' (default, mixed-poisson, geometric-stable)");
  }

  limitlab::SummandModel summands;
  if (o.summands == "rademacher") {
    summands.law = limitlab::SummandLaw::Rademacher;
  } else if (o.summands == "centered-exponential") {
    summands.law = limitlab::SummandLaw::CenteredExponential;
  } else {
    throw UsageError("--summands: unknown model '" + o.summands +
                     "' (rademacher, centered-exponential)");
  }

  limitlab::ExtremalMode mode;
  if (o.mode == "max") {
    mode = limitlab::ExtremalMode::Max;
  } else if (o.mode == "min") {
    mode = limitlab::ExtremalMode::Min;
  } else if (o.mode == "abs") {
    mode = limitlab::ExtremalMode::Abs;
  } else {
    throw UsageError("--mode: unknown mode '" + o.mode +
                     "' (max, min, abs)");
  }

  const std::vector<double> ladder = parse_ladder(o.ladder);
  const std::uint64_t seed = resolve_seed(o.seed);
  limitlab::LimitExperimentReport report;
  try {
    if (rs) {
      report = limitlab::run_random_sum(summands, builder, target, ladder,
                                        o.reps, seed, {}, o.threads);
    } else if (st) {
      report = limitlab::run_statistic(summands, builder, target, ladder,
                                       o.reps, seed, {}, o.threads);
    } else if (ex) {
      report = limitlab::run_extremal_sums(summands, builder, mode, target,
                                           ladder, o.reps, seed, {},
                                           o.threads);
    } else {
      report = limitlab::run_min_extreme(builder, target, ladder, o.reps,
                                         seed, {}, o.threads);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--experiment: ") + e.what());
  }

  write_output(o.format == "json" ? limitlab::to_json(report)
                                  : limitlab::to_csv(report),
               std::nullopt);
  if (o.out) write_output(limitlab::to_json(report), o.out);
  if (o.csv) write_output(limitlab::to_csv(report), o.csv);
  std::fprintf(stderr,
               "final ks %.6f vs threshold %.3f; nonincreasing=%s; %s\n",
               report.points.back().ks, report.final_threshold,
               report.nonincreasing ? "yes" : "no",
               report.pass ? "PASS" : "FAIL");
  return report.pass ? 0 : 1;
}

// ---- tails -----------------------------------------------------------------

struct TailsOpts {
  std::string family;
  ParamFlags params;
  std::size_t n = 1000000;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::optional<std::string> out;
};

int cmd_tails(const TailsOpts& o) {
  if (o.family.empty()) throw UsageError("--family is required");
  const FamilySpec spec = build_spec(parse_family(o.family), o.params);
  verify::TailCheck check;
  try {
    check = verify::run_tail_check(spec, o.n, resolve_seed(o.seed), {},
                                   o.threads);
  } catch (const EvalError& e) {
    throw UsageError("--family: " + std::string(e.what()));
  }
  std::printf("family=%s exponent=%.6f constant=%.6f supported=%s %s\n",
              spec.to_string().c_str(), check.estimate.exponent,
              check.estimate.constant, check.supported.c_str(),
              check.pass ? "PASS" : "FAIL");
  if (o.out) {
    write_output(verify::to_json(std::vector<verify::TailCheck>{check}),
                 o.out);
  }
  return check.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "heavytail: Mittag-Leffler / Linnik distribution laboratory "
      "(evaluation, exact sampling, identity verification, limit-theorem "
      "experiments)"};
  app.require_subcommand(1);
  int rc = 0;

  EvalOpts eo;
  auto* eval_cmd = app.add_subcommand(
      "eval", "Evaluate pdf/cdf/quantile/transform/tail in closed form");
  eval_cmd->add_option("--family", eo.family,
                       "family name, e.g. mittag-leffler, linnik");
  add_param_flags(eval_cmd, eo.params);
  eval_cmd->add_option("--what", eo.what,
                       "pdf|cdf|both|quantile|laplace|charfun|tail|mlf");
  eval_cmd->add_option("--grid", eo.grid, "evaluation grid lo:hi:step");
  eval_cmd->add_option("--x", eo.x, "pdf/cdf argument");
  eval_cmd->add_option("--q", eo.q, "quantile level in (0,1)");
  eval_cmd->add_option("--s", eo.s, "Laplace-transform argument (>= 0)");
  eval_cmd->add_option("--t", eo.t, "characteristic-function argument");
  eval_cmd->add_option("--z", eo.z, "Mittag-Leffler function argument");
  eval_cmd->add_option("--out", eo.out, "output file (default stdout)");
  eval_cmd->add_option("--format", eo.format, "csv|json (default csv)");
  eval_cmd->callback([&] { rc = cmd_eval(eo); });

  SampleOpts so;
  auto* sample_cmd =
      app.add_subcommand("sample", "Draw from a registered sampling recipe");
  sample_cmd->add_option("--recipe", so.recipe, "recipe id")->required();
  add_param_flags(sample_cmd, so.params);
  sample_cmd->add_option("--n", so.n, "sample size")->required();
  sample_cmd->add_option("--seed", so.seed,
                         "RNG seed (default: HEAVYTAIL_SEED or 12345)");
  sample_cmd->add_option("--stream", so.stream, "RNG stream index");
  sample_cmd->add_option("--threads", so.threads, "worker threads");
  sample_cmd->add_flag("--summary", so.summary,
                       "JSON: emit summary statistics instead of values");
  sample_cmd->add_option("--out", so.out, "output file (default stdout)");
  sample_cmd->add_option("--format", so.format, "csv|json (default csv)");
  sample_cmd->callback([&] { rc = cmd_sample(so); });

  VerifyOpts vo;
  auto* verify_cmd = app.add_subcommand(
      "verify", "Run the distributional-identity registry");
  verify_cmd->add_flag("--all", vo.all,
                       "run the full registry plus negative controls");
  verify_cmd->add_flag("--list", vo.list, "list registered identities");
  verify_cmd->add_option("--identity", vo.identity, "run one identity");
  verify_cmd->add_option("--n", vo.n, "sample size per draw");
  verify_cmd->add_option("--seeds", vo.seeds, "seeds per grid point");
  verify_cmd->add_option("--alpha", vo.alpha, "KS significance level");
  verify_cmd->add_option("--threads", vo.threads, "worker threads");
  verify_cmd->add_flag("--with-transforms", vo.with_transforms,
                       "also run the transform-matching suite");
  verify_cmd->add_flag("--with-tails", vo.with_tails,
                       "also run the tail suite");
  verify_cmd->add_option("--out", vo.out, "verification-run JSON array");
  verify_cmd->add_option("--transforms-out", vo.transforms_out,
                         "transform-suite JSON");
  verify_cmd->add_option("--tails-out", vo.tails_out, "tail-suite JSON");
  verify_cmd->callback([&] { rc = cmd_verify(vo); });

  LimitOpts lo;
  auto* limit_cmd =
      app.add_subcommand("limit", "Run a limit-theorem ladder experiment");
  limit_cmd
      ->add_option("--experiment", lo.experiment,
                   "random-sum|statistic|extremal-sums|min-extreme")
      ->required();
  limit_cmd->add_option("--alpha", lo.params.alpha,
                        "Linnik-type target index");
  limit_cmd->add_option("--delta", lo.params.delta,
                        "Mittag-Leffler-type target index");
  limit_cmd->add_flag("--control", lo.control,
                      "degenerate-index classical control target");
  limit_cmd->add_option("--mode", lo.mode,
                        "extremal-sums mode: max|min|abs (default max)");
  limit_cmd->add_option("--builder", lo.builder,
                        "default|mixed-poisson|geometric-stable");
  limit_cmd->add_option("--summands", lo.summands,
                        "rademacher|centered-exponential");
  limit_cmd->add_option("--ladder", lo.ladder,
                        "comma-separated scales (default 100,1000,10000)");
  limit_cmd->add_option("--reps", lo.reps, "replications per rung");
  limit_cmd->add_option("--seed", lo.seed,
                        "RNG seed (default: HEAVYTAIL_SEED or 12345)");
  limit_cmd->add_option("--threads", lo.threads, "worker threads");
  limit_cmd->add_option("--out", lo.out, "report JSON file");
  limit_cmd->add_option("--csv", lo.csv, "two-column (n, ks) plot CSV file");
  limit_cmd->add_option("--format", lo.format,
                        "stdout format: csv|json (default csv)");
  limit_cmd->callback([&] { rc = cmd_limit(lo); });

  TailsOpts to;
  auto* tails_cmd = app.add_subcommand(
      "tails", "Monte Carlo tail-exponent fit for one family");
  tails_cmd->add_option("--family", to.family, "family name");
  add_param_flags(tails_cmd, to.params);
  tails_cmd->add_option("--n", to.n, "sample size (default 10^6)");
  tails_cmd->add_option("--seed", to.seed,
                        "RNG seed (default: HEAVYTAIL_SEED or 12345)");
  tails_cmd->add_option("--threads", to.threads, "worker threads");
  tails_cmd->add_option("--out", to.out, "tail-check JSON file");
  tails_cmd->callback([&] { rc = cmd_tails(to); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const EvalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return rc;
}
