#include "heavytail/samplers.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

namespace heavytail::samplers {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr std::size_t kChunk = 65536;  // fixed shard size for determinism
}  // namespace

// --- mixing-law primitives -------------------------------------------

double draw_k(double rho, RngStream& rng) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("draw_k: rho must lie in (0,1]");
  }
  const double u = rng.next_u01();
  if (rho >= 1.0) return 1.0;
  // Inverse CDF: F(x) = 1 - atan2(sin(pi rho), x + cos(pi rho)) / (pi rho),
  // so F^{-1}(u) = sin(pi rho) * tan(pi rho (u - 1) + pi/2) - cos(pi rho).
  const double s = std::sin(kPi * rho);
  const double c = std::cos(kPi * rho);
  double x = s * std::tan(kPi * rho * (u - 1.0) + kPi / 2.0) - c;
  return x > 0.0 ? x : 0.0;
}

double draw_q(double alpha, double alpha_prime, RngStream& rng) {
  if (!(alpha > 0.0 && alpha_prime > 0.0 && alpha <= alpha_prime)) {
    throw std::invalid_argument("draw_q: need 0 < alpha <= alpha_prime");
  }
  if (alpha == alpha_prime) {
    rng.next_u01();  // keep the stream budget of one uniform per draw
    return 1.0;
  }
  return std::pow(draw_k(alpha / alpha_prime, rng), 1.0 / alpha);
}

double draw_stable_ratio(double alpha, RngStream& rng) {
  if (alpha >= 1.0) {
    return 1.0;  // S(1) is the point mass at 1
  }
  const double s1 = rng.positive_stable(alpha);
  const double s2 = rng.positive_stable(alpha);
  return s1 / s2;
}

double draw_h_delta(double delta, RngStream& rng) {
  const double r = draw_stable_ratio(delta, rng);
  return 2.0 * rng.exponential() * r * r;
}

double draw_inverse_stable(double alpha, RngStream& rng) {
  return 1.0 / rng.positive_stable(alpha);
}

double draw_primitive(const FamilySpec& spec, RngStream& rng) {
  switch (spec.family) {
    case Family::Exponential:
      return rng.exponential();
    case Family::Weibull:
      return rng.weibull(spec.gamma());
    case Family::Rayleigh:
      return rng.weibull(2.0);
    case Family::Laplace:
      return rng.laplace();
    case Family::Normal:
      return rng.normal();
    case Family::HalfNormal:
      return std::fabs(rng.normal());
    case Family::PositiveStable:
      return rng.positive_stable(spec.delta());
    case Family::SymmetricStable:
      return rng.symmetric_stable(spec.alpha());
    case Family::Geometric:
      return static_cast<double>(rng.geometric(spec.p()));
    default:
      throw std::invalid_argument(
          "draw_primitive: " + family_name(spec.family) +
          " is not a primitive family; use a registry recipe");
  }
}

// --- recipe draw functions --------------------------------------------
// Each function realises exactly the equation in its registry entry.

namespace {

// Mittag-Leffler M(d), Laplace transform 1/(1+s^d).

double ml_stable_weibull(double d, RngStream& rng) {
  return rng.positive_stable(d) * rng.weibull(d);  // S(1) degenerates to 1
}

double rec_ml_stable_weibull(const FamilySpec& s, RngStream& rng) {
  return ml_stable_weibull(s.delta(), rng);
}

double rec_ml_k_exp(const FamilySpec& s, RngStream& rng) {
  const double d = s.delta();
  return std::pow(draw_k(d, rng), 1.0 / d) * rng.exponential();
}

double rec_ml_exp_ratio(const FamilySpec& s, RngStream& rng) {
  return rng.exponential() * draw_stable_ratio(s.delta(), rng);
}

double rec_ml_half_normal(const FamilySpec& s, RngStream& rng) {
  const double r = draw_stable_ratio(s.delta(), rng);
  return std::fabs(rng.normal()) * std::sqrt(2.0 * rng.exponential()) * r;
}

double rec_ml_weibull_mix(const FamilySpec& s, RngStream& rng) {
  const double d = s.delta();
  const double dp = 0.5 * (1.0 + d);  // interior index in (d, 1]
  return rng.weibull(dp) * rng.positive_stable(dp) *
         std::pow(draw_k(d / dp, rng), 1.0 / d);
}

double rec_ml_k_step(const FamilySpec& s, RngStream& rng) {
  const double d = s.delta();
  const double dp = 0.5 * (1.0 + d);
  const double inner = ml_stable_weibull(dp, rng);  // M(d')
  return inner * std::pow(draw_k(d / dp, rng), 1.0 / d);
}

// Linnik L(a), characteristic function 1/(1+|t|^a).

double linnik_normal_ml(double a, RngStream& rng) {
  return rng.normal() * std::sqrt(2.0 * ml_stable_weibull(0.5 * a, rng));
}

double rec_linnik_stable_weibull(const FamilySpec& s, RngStream& rng) {
  const double a = s.alpha();
  return rng.symmetric_stable(a) * rng.weibull(a);
}

double rec_linnik_normal_ml(const FamilySpec& s, RngStream& rng) {
  return linnik_normal_ml(s.alpha(), rng);
}

double rec_linnik_stable_ml(const FamilySpec& s, RngStream& rng) {
  const double a = s.alpha();
  const double ap = 0.25 * (2.0 + a);  // in (1/2, 1]
  const double a0 = a / ap;            // in (0, 2]
  return rng.symmetric_stable(a0) *
         std::pow(ml_stable_weibull(ap, rng), 1.0 / a0);
}

double rec_linnik_laplace_ratio(const FamilySpec& s, RngStream& rng) {
  return rng.laplace() * std::sqrt(draw_stable_ratio(0.5 * s.alpha(), rng));
}

double rec_linnik_laplace_q(const FamilySpec& s, RngStream& rng) {
  return rng.laplace() * draw_q(s.alpha(), 2.0, rng);
}

double rec_linnik_q_step(const FamilySpec& s, RngStream& rng) {
  const double a = s.alpha();
  const double ap = 0.5 * (a + 2.0);  // interior index in (a, 2]
  const double inner = linnik_normal_ml(ap, rng);  // L(a')
  return inner * draw_q(a, ap, rng);
}

// Weibull and exponential mixtures.

double rec_weibull_rayleigh(const FamilySpec& s, RngStream& rng) {
  const double g = s.gamma();
  if (g >= 2.0) return rng.weibull(2.0);
  return rng.weibull(2.0) / std::sqrt(rng.positive_stable(0.5 * g));
}

double rec_weibull_exp(const FamilySpec& s, RngStream& rng) {
  const double g = s.gamma();
  if (g >= 1.0) return rng.exponential();
  return rng.exponential() / rng.positive_stable(g);
}

double rec_weibull_weibull(const FamilySpec& s, RngStream& rng) {
  const double g = s.gamma();
  // S(1/2)^{-1/(2g)} = (sqrt(2)|N|)^{1/g} via the closed Levy form.
  return rng.weibull(2.0 * g) *
         std::pow(std::sqrt(2.0) * std::fabs(rng.normal()), 1.0 / g);
}

double rec_exp_weibull(const FamilySpec&, RngStream& rng) {
  return rng.weibull(2.0) * std::sqrt(2.0) * std::fabs(rng.normal());
}

double rec_exp_half_normal(const FamilySpec&, RngStream& rng) {
  return std::fabs(rng.normal()) * std::sqrt(2.0 * rng.exponential());
}

// Symmetrised Mittag-Leffler TM(d).

double rec_twosided_sign(const FamilySpec& s, RngStream& rng) {
  return static_cast<double>(rng.sign()) * ml_stable_weibull(s.delta(), rng);
}

double rec_twosided_normal(const FamilySpec& s, RngStream& rng) {
  const double d = s.delta();
  return rng.normal() * std::sqrt(2.0 * rng.exponential()) *
         std::pow(draw_k(d, rng), 1.0 / d);
}

// One-sided Linnik |L(a)|.

double rec_onesided_abs_normal(const FamilySpec& s, RngStream& rng) {
  return std::fabs(linnik_normal_ml(s.alpha(), rng));
}

double rec_onesided_weibull(const FamilySpec& s, RngStream& rng) {
  return rng.weibull(2.0) * std::sqrt(2.0) * std::fabs(rng.normal()) *
         draw_q(s.alpha(), 2.0, rng);
}

// Stable families.

double rec_stable_compose(const FamilySpec& s, RngStream& rng) {
  const double a = s.alpha();
  const double ap = 0.25 * (a + 2.0);  // in (1/2, 1]
  const double a0 = a / ap;            // in (0, 2]
  return rng.symmetric_stable(a0) *
         std::pow(rng.positive_stable(ap), 1.0 / a0);
}

double rec_weibull_power(const FamilySpec& s, RngStream& rng) {
  const double w = rng.weibull(2.0 * s.gamma());
  return w * w;
}

double rec_symstable_normal(const FamilySpec& s, RngStream& rng) {
  return rng.normal() * std::sqrt(2.0 * rng.positive_stable(0.5 * s.alpha()));
}

double rec_symstable_direct(const FamilySpec& s, RngStream& rng) {
  return rng.symmetric_stable(s.alpha());
}

double rec_posstable_direct(const FamilySpec& s, RngStream& rng) {
  return rng.positive_stable(s.delta());
}

// Laplace.

double rec_laplace_normal_exp(const FamilySpec&, RngStream& rng) {
  return rng.normal() * std::sqrt(2.0 * rng.exponential());
}

double rec_laplace_direct(const FamilySpec&, RngStream& rng) {
  return rng.laplace();
}

// Ratio and kernel families.

double rec_stableratio_direct(const FamilySpec& s, RngStream& rng) {
  return draw_stable_ratio(s.alpha(), rng);
}

double rec_ratio_via_k_power(const FamilySpec& s, RngStream& rng) {
  const double a = s.alpha();
  if (a >= 1.0) {
    rng.next_u01();
    return 1.0;
  }
  return std::pow(draw_k(a, rng), 1.0 / a);
}

double rec_ratioq_via_sqrt_ratio(const FamilySpec& s, RngStream& rng) {
  return std::sqrt(draw_stable_ratio(0.5 * s.alpha(), rng));
}

double rec_ratioq_direct(const FamilySpec& s, RngStream& rng) {
  return draw_q(s.alpha(), s.alpha_prime(), rng);
}

double rec_k_direct(const FamilySpec& s, RngStream& rng) {
  return draw_k(s.rho(), rng);
}

double rec_hdelta_direct(const FamilySpec& s, RngStream& rng) {
  return draw_h_delta(s.delta(), rng);
}

// Remaining primitive families.

double rec_exp_direct(const FamilySpec&, RngStream& rng) {
  return rng.exponential();
}

double rec_weibull_direct(const FamilySpec& s, RngStream& rng) {
  return rng.weibull(s.gamma());
}

double rec_rayleigh_direct(const FamilySpec&, RngStream& rng) {
  return rng.weibull(2.0);
}

double rec_normal_direct(const FamilySpec&, RngStream& rng) {
  return rng.normal();
}

double rec_halfnormal_direct(const FamilySpec&, RngStream& rng) {
  return std::fabs(rng.normal());
}

double rec_geometric_direct(const FamilySpec& s, RngStream& rng) {
  return static_cast<double>(rng.geometric(s.p()));
}

// Validity predicates.

bool valid_any(const FamilySpec&) { return true; }
bool valid_gamma_le2(const FamilySpec& s) { return s.gamma() <= 2.0; }
bool valid_gamma_le1(const FamilySpec& s) { return s.gamma() <= 1.0; }
bool valid_q_prime2(const FamilySpec& s) { return s.alpha_prime() == 2.0; }

std::vector<Recipe> build_registry() {
  std::vector<Recipe> r;
  auto add = [&r](const char* id, Family target, const char* eq,
                  const char* method, bool (*valid)(const FamilySpec&),
                  double (*draw)(const FamilySpec&, RngStream&)) {
    r.push_back(Recipe{id, target, eq, method, valid, draw});
  };

  // Mittag-Leffler.
  add("ML_VIA_STABLE_WEIBULL", Family::MittagLeffler,
      "M(d) = S(d) * W(d)",
      "Kanter (1975) stable draw; inverse-CDF Weibull", valid_any,
      rec_ml_stable_weibull);
  add("ML_VIA_K_EXP", Family::MittagLeffler,
      "M(d) = K(d)^(1/d) * E",
      "closed-form K inverse CDF; inverse-CDF exponential", valid_any,
      rec_ml_k_exp);
  add("ML_VIA_EXP_RATIO", Family::MittagLeffler,
      "M(d) = E * S(d)/S'(d)",
      "Kanter (1975) stable ratio; inverse-CDF exponential", valid_any,
      rec_ml_exp_ratio);
  add("ML_VIA_HALF_NORMAL", Family::MittagLeffler,
      "M(d) = |N| * sqrt(2 E) * S(d)/S'(d)",
      "Box-Muller (1958) normal; Kanter (1975) stable ratio", valid_any,
      rec_ml_half_normal);
  add("ML_VIA_WEIBULL_MIX", Family::MittagLeffler,
      "M(d) = W(d') * S(d') * K(d/d')^(1/d),  d' = (1+d)/2",
      "Kanter (1975) stable draw; closed-form K inverse CDF", valid_any,
      rec_ml_weibull_mix);
  add("ML_VIA_K_STEP", Family::MittagLeffler,
      "M(d) = M(d') * K(d/d')^(1/d),  d' = (1+d)/2,  M(d') = S(d') W(d')",
      "two-step index reduction; Kanter (1975); closed-form K", valid_any,
      rec_ml_k_step);

  // Linnik.
  add("LINNIK_VIA_STABLE_WEIBULL", Family::Linnik,
      "L(a) = Z(a) * W(a)",
      "Chambers-Mallows-Stuck (1976) stable draw; inverse-CDF Weibull",
      valid_any, rec_linnik_stable_weibull);
  add("LINNIK_VIA_NORMAL_ML", Family::Linnik,
      "L(a) = N * sqrt(2 M(a/2)),  M(a/2) = S(a/2) W(a/2)",
      "Box-Muller (1958); Kanter (1975)", valid_any, rec_linnik_normal_ml);
  add("LINNIK_VIA_STABLE_ML", Family::Linnik,
      "L(a) = Z(a0) * M(a')^(1/a0),  a' = (2+a)/4,  a0 = a/a'",
      "Chambers-Mallows-Stuck (1976); Kanter (1975)", valid_any,
      rec_linnik_stable_ml);
  add("LINNIK_VIA_LAPLACE_RATIO", Family::Linnik,
      "L(a) = Lap * sqrt(S(a/2)/S'(a/2))",
      "inverse-CDF Laplace; Kanter (1975) stable ratio", valid_any,
      rec_linnik_laplace_ratio);
  add("LINNIK_VIA_LAPLACE_Q", Family::Linnik,
      "L(a) = Lap * Q(a,2),  Q(a,2) = K(a/2)^(1/a)",
      "inverse-CDF Laplace; closed-form K inverse CDF", valid_any,
      rec_linnik_laplace_q);
  add("LINNIK_VIA_Q_STEP", Family::Linnik,
      "L(a) = L(a') * Q(a,a'),  a' = (a+2)/2,  L(a') = N sqrt(2 M(a'/2))",
      "two-step index reduction; Box-Muller (1958); Kanter (1975)",
      valid_any, rec_linnik_q_step);

  // Weibull / exponential.
  add("WEIBULL_VIA_RAYLEIGH", Family::Weibull,
      "W(g) = W(2) / sqrt(S(g/2)),  g <= 2",
      "inverse-CDF Rayleigh; Kanter (1975)", valid_gamma_le2,
      rec_weibull_rayleigh);
  add("WEIBULL_VIA_EXP", Family::Weibull,
      "W(g) = E / S(g),  g <= 1",
      "inverse-CDF exponential; Kanter (1975)", valid_gamma_le1,
      rec_weibull_exp);
  add("WEIBULL_VIA_WEIBULL", Family::Weibull,
      "W(g) = W(2g) * (sqrt(2)|N|)^(1/g)",
      "inverse-CDF Weibull; Box-Muller (1958) via the closed Levy form",
      valid_any, rec_weibull_weibull);
  add("EXP_VIA_WEIBULL", Family::Exponential,
      "E = W(2) * sqrt(2) * |N|",
      "inverse-CDF Rayleigh; Box-Muller (1958)", valid_any, rec_exp_weibull);
  add("EXP_VIA_HALF_NORMAL", Family::Exponential,
      "E = |N| * sqrt(2 E')",
      "Box-Muller (1958); inverse-CDF exponential", valid_any,
      rec_exp_half_normal);

  // Symmetrised Mittag-Leffler.
  add("TWOSIDED_ML_VIA_SIGN", Family::TwoSidedML,
      "TM(d) = sign * M(d),  M(d) = S(d) W(d)",
      "Rademacher sign; Kanter (1975)", valid_any, rec_twosided_sign);
  add("TWOSIDED_ML_VIA_NORMAL", Family::TwoSidedML,
      "TM(d) = N * sqrt(2 E) * K(d)^(1/d)",
      "Box-Muller (1958); closed-form K inverse CDF", valid_any,
      rec_twosided_normal);

  // One-sided Linnik.
  add("ONESIDED_LINNIK_VIA_ABS_NORMAL", Family::OneSidedLinnik,
      "|L|(a) = |N| * sqrt(2 M(a/2)),  M(a/2) = S(a/2) W(a/2)",
      "Box-Muller (1958); Kanter (1975)", valid_any,
      rec_onesided_abs_normal);
  add("ONESIDED_LINNIK_VIA_WEIBULL", Family::OneSidedLinnik,
      "|L|(a) = W(2) * sqrt(2)|N| * Q(a,2)",
      "inverse-CDF Rayleigh; Box-Muller (1958); closed-form K", valid_any,
      rec_onesided_weibull);

  // Stable.
  add("STABLE_COMPOSE", Family::SymmetricStable,
      "Z(a) = Z(a0) * S(a')^(1/a0),  a' = (a+2)/4,  a0 = a/a'",
      "Chambers-Mallows-Stuck (1976); Kanter (1975)", valid_any,
      rec_stable_compose);
  add("WEIBULL_POWER", Family::Weibull,
      "W(g) = W(2g)^2",
      "inverse-CDF Weibull and the stability of Weibull powers", valid_any,
      rec_weibull_power);
  add("SYMSTABLE_VIA_NORMAL", Family::SymmetricStable,
      "Z(a) = N * sqrt(2 S(a/2))",
      "Box-Muller (1958); Kanter (1975) subordination", valid_any,
      rec_symstable_normal);
  add("SYMSTABLE_DIRECT", Family::SymmetricStable,
      "Z(a) direct",
      "Chambers-Mallows-Stuck (1976)", valid_any, rec_symstable_direct);
  add("POSSTABLE_DIRECT", Family::PositiveStable,
      "S(d) direct",
      "Kanter (1975)", valid_any, rec_posstable_direct);

  // Laplace.
  add("LAPLACE_VIA_NORMAL_EXP", Family::Laplace,
      "Lap = N * sqrt(2 E)",
      "Box-Muller (1958); inverse-CDF exponential", valid_any,
      rec_laplace_normal_exp);
  add("LAPLACE_DIRECT", Family::Laplace,
      "Lap direct",
      "inverse CDF", valid_any, rec_laplace_direct);

  // Ratio / kernel families.
  add("STABLERATIO_DIRECT", Family::StableRatio,
      "R(a) = S(a)/S'(a)",
      "Kanter (1975), two independent draws", valid_any,
      rec_stableratio_direct);
  add("RATIO_VIA_K_POWER", Family::StableRatio,
      "R(a) = K(a)^(1/a)",
      "closed-form K inverse CDF", valid_any, rec_ratio_via_k_power);
  add("RATIOQ_VIA_SQRT_RATIO", Family::RatioQ,
      "Q(a,2) = sqrt(S(a/2)/S'(a/2))",
      "Kanter (1975) stable ratio", valid_q_prime2,
      rec_ratioq_via_sqrt_ratio);
  add("RATIOQ_DIRECT", Family::RatioQ,
      "Q(a,a') = K(a/a')^(1/a)",
      "closed-form K inverse CDF", valid_any, rec_ratioq_direct);
  add("K_DIRECT", Family::KozubowskiK,
      "K(r) direct",
      "closed-form inverse CDF", valid_any, rec_k_direct);
  add("HDELTA_DIRECT", Family::HDelta,
      "H(d) = 2 E (S(d)/S'(d))^2",
      "inverse-CDF exponential; Kanter (1975) stable ratio", valid_any,
      rec_hdelta_direct);

  // Remaining primitives.
  add("EXP_DIRECT", Family::Exponential, "E direct", "inverse CDF",
      valid_any, rec_exp_direct);
  add("WEIBULL_DIRECT", Family::Weibull, "W(g) direct", "inverse CDF",
      valid_any, rec_weibull_direct);
  add("RAYLEIGH_DIRECT", Family::Rayleigh, "W(2) direct", "inverse CDF",
      valid_any, rec_rayleigh_direct);
  add("NORMAL_DIRECT", Family::Normal, "N direct", "Box-Muller (1958)",
      valid_any, rec_normal_direct);
  add("HALFNORMAL_DIRECT", Family::HalfNormal, "|N| direct",
      "Box-Muller (1958)", valid_any, rec_halfnormal_direct);
  add("GEOMETRIC_DIRECT", Family::Geometric, "Geom(p) direct, support 1,2,...",
      "inverse CDF", valid_any, rec_geometric_direct);
  return r;
}

}  // namespace

const std::vector<Recipe>& recipe_registry() {
  static const std::vector<Recipe> registry = build_registry();
  return registry;
}

const Recipe* find_recipe(const std::string& id) {
  for (const Recipe& r : recipe_registry()) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

const Recipe& require_recipe(const std::string& id) {
  const Recipe* r = find_recipe(id);
  if (r != nullptr) return *r;
  std::string msg = "unknown recipe '" + id + "'; registered recipes:";
  for (const Recipe& known : recipe_registry()) {
    msg += " " + known.id;
  }
  throw std::invalid_argument(msg);
}

SampleBatch sample(const std::string& recipe_id, const FamilySpec& target,
                   std::size_t n, std::uint64_t seed, std::uint64_t stream,
                   int threads) {
  const Recipe& recipe = require_recipe(recipe_id);
  if (recipe.target != target.family) {
    throw std::invalid_argument("recipe " + recipe.id + " samples " +
                                family_name(recipe.target) + ", not " +
                                family_name(target.family));
  }
  if (!recipe.valid(target)) {
    throw std::invalid_argument("recipe " + recipe.id +
                                " does not admit parameters " +
                                target.to_string());
  }
  constexpr std::size_t kMaxN =
      static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max());
  if (n > kMaxN) {
    throw std::invalid_argument(
        "sample: n exceeds the per-call cap of 2^31 - 1");
  }
  if (threads < 1) {
    throw std::invalid_argument("sample: threads must be >= 1");
  }

  SampleBatch batch;
  batch.recipe_id = recipe.id;
  batch.target = target;
  batch.seed = seed;
  batch.stream = stream;
  batch.values.resize(n);

  if (n == 0) return batch;
  const std::size_t shards = (n + kChunk - 1) / kChunk;

  auto run_shard = [&](std::size_t shard) {
    RngStream rng(seed, substream(stream, static_cast<std::uint64_t>(shard)));
    const std::size_t begin = shard * kChunk;
    const std::size_t end = std::min(begin + kChunk, n);
    for (std::size_t i = begin; i < end; ++i) {
      batch.values[i] = recipe.draw(target, rng);
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), shards);
  if (workers <= 1) {
    for (std::size_t shard = 0; shard < shards; ++shard) run_shard(shard);
    return batch;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t shard = next.fetch_add(1);
        if (shard >= shards) return;
        run_shard(shard);
      }
    });
  }
  for (std::thread& t : pool) t.join();
  return batch;
}

}  // namespace heavytail::samplers
