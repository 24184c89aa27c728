// Microbenchmarks for the hot paths: recipe sampling throughput, analytic
// evaluation of the heavy densities, and the KS statistic.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "heavytail/analytics.hpp"
#include "heavytail/mittag_leffler.hpp"
#include "heavytail/rng.hpp"
#include "heavytail/samplers.hpp"
#include "heavytail/stats.hpp"

using namespace heavytail;

namespace {

void BM_RngUniform(benchmark::State& state) {
  RngStream rng(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.next_u01());
  }
}
BENCHMARK(BM_RngUniform);

void BM_PositiveStable(benchmark::State& state) {
  RngStream rng(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.positive_stable(0.6));
  }
}
BENCHMARK(BM_PositiveStable);

void BM_RecipeDraw(benchmark::State& state, const char* id,
                   const FamilySpec& spec) {
  const samplers::Recipe& recipe = samplers::require_recipe(id);
  RngStream rng(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(recipe.draw(spec, rng));
  }
}
BENCHMARK_CAPTURE(BM_RecipeDraw, ml_k_exp, "ML_VIA_K_EXP",
                  FamilySpec::mittag_leffler(0.6));
BENCHMARK_CAPTURE(BM_RecipeDraw, ml_stable_weibull, "ML_VIA_STABLE_WEIBULL",
                  FamilySpec::mittag_leffler(0.6));
BENCHMARK_CAPTURE(BM_RecipeDraw, linnik_normal_ml, "LINNIK_VIA_NORMAL_ML",
                  FamilySpec::linnik(1.4));
BENCHMARK_CAPTURE(BM_RecipeDraw, hdelta, "HDELTA_DIRECT",
                  FamilySpec::h_delta(0.5));

void BM_SampleBatch(benchmark::State& state) {
  const FamilySpec spec = FamilySpec::mittag_leffler(0.6);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        samplers::sample("ML_VIA_K_EXP", spec, n, 42, 0, 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_SampleBatch)->Arg(10000)->Arg(100000);

void BM_MittagLefflerE(benchmark::State& state) {
  double z = -0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ml_e(0.6, z));
    z = z <= -10.0 ? -0.1 : z - 0.1;
  }
}
BENCHMARK(BM_MittagLefflerE);

void BM_MlPdf(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ml_pdf(0.6, x));
    x = x >= 10.0 ? 0.1 : x + 0.1;
  }
}
BENCHMARK(BM_MlPdf);

void BM_LinnikCdf(benchmark::State& state) {
  const FamilySpec spec = FamilySpec::linnik(1.4);
  double x = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cdf(spec, x));
    x = x >= 5.0 ? -5.0 : x + 0.1;
  }
}
BENCHMARK(BM_LinnikCdf);

void BM_CachedCdfEval(benchmark::State& state) {
  const CachedCdf cached(FamilySpec::linnik(1.4));
  double x = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cached(x));
    x = x >= 5.0 ? -5.0 : x + 0.1;
  }
}
BENCHMARK(BM_CachedCdfEval);

void BM_KsTwoSample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RngStream rng(3, 0);
  std::vector<double> a(n), b(n);
  for (auto& v : a) v = rng.normal();
  for (auto& v : b) v = rng.normal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(stats::ks_two_sample(a, b, 1e-3));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(2 * n));
}
BENCHMARK(BM_KsTwoSample)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
