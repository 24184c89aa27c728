#include <doctest.h>

#include <cmath>
#include <vector>

#include "heavytail/analytics.hpp"
#include "heavytail/rng.hpp"
#include "heavytail/stats.hpp"

using namespace heavytail;
using namespace heavytail::stats;

TEST_CASE("Kolmogorov critical coefficient") {
  CHECK(ks_critical_coefficient(0.05) ==
        doctest::Approx(std::sqrt(-std::log(0.025) / 2.0)).epsilon(1e-12));
  CHECK(ks_critical_coefficient(1e-3) ==
        doctest::Approx(std::sqrt(-std::log(5e-4) / 2.0)).epsilon(1e-12));
}

TEST_CASE("two-sample statistic on a hand-checked pair") {
  const KsResult r = ks_two_sample({1.0, 2.0, 3.0}, {1.5, 2.5, 3.5}, 0.05);
  CHECK(r.statistic == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(r.n1 == 3);
  CHECK(r.n2 == 3);
  CHECK(r.critical ==
        doctest::Approx(ks_critical_coefficient(0.05) * std::sqrt(2.0 / 3.0))
            .epsilon(1e-12));
  CHECK(!r.reject);
}

TEST_CASE("one-sample statistic on a hand-checked sample") {
  const KsResult r = ks_one_sample(
      {0.25, 0.75}, [](double x) { return x; }, 0.05);
  CHECK(r.statistic == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.n1 == 2);
  CHECK(r.n2 == 0);
}

TEST_CASE("two-sample test separates what it should and only that") {
  RngStream rng(11, 0);
  std::vector<double> a(20000), b(20000), shifted(20000);
  for (auto& v : a) v = rng.normal();
  for (auto& v : b) v = rng.normal();
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = b[i] + 0.1;

  CHECK(!ks_two_sample(a, b, 1e-3).reject);
  CHECK(ks_two_sample(a, shifted, 1e-3).reject);
}

TEST_CASE("one-sample test accepts the true CDF at scale") {
  RngStream rng(12, 0);
  std::vector<double> x(50000);
  for (auto& v : x) v = rng.exponential();
  const KsResult r = ks_one_sample(
      std::move(x), [](double v) { return 1.0 - std::exp(-v); }, 1e-3);
  CHECK(!r.reject);
  CHECK(r.statistic < 0.01);
}

TEST_CASE("tail_slope recovers a synthetic Pareto law") {
  // X = U^{-1/2}: survival x^{-2} exactly, constant 1, on x >= 1.
  RngStream rng(13, 0);
  std::vector<double> x(200000);
  for (auto& v : x) v = 1.0 / std::sqrt(rng.next_u01());
  const TailEstimate est = tail_slope(std::move(x));
  CHECK(est.exponent == doctest::Approx(2.0).epsilon(0.05));
  CHECK(est.constant == doctest::Approx(1.0).epsilon(0.15));
  CHECK(est.points == 400);
  CHECK(est.window_lo == 0.99);
  CHECK(est.window_hi == 0.9999);
  CHECK(est.slope_se > 0.0);
}

TEST_CASE("tail_slope window and subsampling are configurable") {
  RngStream rng(14, 0);
  std::vector<double> x(50000);
  for (auto& v : x) v = std::pow(rng.next_u01(), -1.0);  // exponent 1
  const TailEstimate est = tail_slope(std::move(x), 0.95, 0.999, 100);
  CHECK(est.exponent == doctest::Approx(1.0).epsilon(0.08));
  CHECK(est.points <= 100);
  CHECK(est.window_lo == 0.95);
}

TEST_CASE("mc_transform estimates Laplace and characteristic values") {
  RngStream rng(15, 0);
  std::vector<double> expo(100000), norm(100000);
  for (auto& v : expo) v = rng.exponential();
  for (auto& v : norm) v = rng.normal();

  const TransformEstimate lap = mc_transform(expo, TransformKind::Laplace, 1.0);
  CHECK(lap.n == expo.size());
  CHECK(std::abs(lap.estimate.real() - 0.5) < 4.0 * lap.se_real);
  CHECK(lap.estimate.imag() == 0.0);

  const TransformEstimate cf = mc_transform(norm, TransformKind::CharFn, 1.0);
  CHECK(std::abs(cf.estimate.real() - std::exp(-0.5)) < 4.0 * cf.se_real);
  // Symmetric law: imaginary part is pure noise around zero.
  CHECK(std::abs(cf.estimate.imag()) < 4.0 * cf.se_imag + 1e-12);
}
