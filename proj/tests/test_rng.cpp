#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "heavytail/rng.hpp"

using heavytail::RngStream;
using heavytail::substream;

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

template <typename Draw>
Moments sample_moments(std::size_t n, RngStream& rng, Draw draw) {
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = draw(rng);
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / static_cast<double>(n);
  return {mean, sumsq / static_cast<double>(n) - mean * mean};
}

}  // namespace

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(42, 1), b(42, 1), c(42, 2), d(43, 1);
  bool all_equal = true, differs_by_stream = false, differs_by_seed = false;
  for (int i = 0; i < 1000; ++i) {
    const auto va = a.next_u64();
    all_equal = all_equal && (va == b.next_u64());
    differs_by_stream = differs_by_stream || (va != c.next_u64());
    differs_by_seed = differs_by_seed || (va != d.next_u64());
  }
  CHECK(all_equal);
  CHECK(differs_by_stream);
  CHECK(differs_by_seed);
}

TEST_CASE("substream packs base and shard without collisions") {
  CHECK(substream(3, 5) == ((std::uint64_t{3} << 21) | 5));
  CHECK(substream(0, 0) == 0);
  CHECK(substream(1, 0) != substream(0, 1));
  // Shards below 2^21 never collide across bases.
  CHECK(substream(7, (1u << 21) - 1) + 1 == substream(8, 0));
}

TEST_CASE("next_u01 lies strictly inside the unit interval") {
  RngStream rng(7, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.next_u01();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("primitive generators match their first two moments") {
  const std::size_t n = 200000;
  RngStream rng(1234, 0);

  SUBCASE("exponential") {
    auto m = sample_moments(n, rng, [](RngStream& r) { return r.exponential(); });
    CHECK(m.mean == doctest::Approx(1.0).epsilon(0.02));
    CHECK(m.var == doctest::Approx(1.0).epsilon(0.05));
  }
  SUBCASE("normal") {
    auto m = sample_moments(n, rng, [](RngStream& r) { return r.normal(); });
    CHECK(std::abs(m.mean) < 0.01);
    CHECK(m.var == doctest::Approx(1.0).epsilon(0.02));
  }
  SUBCASE("weibull gamma=2 has mean Gamma(1.5)") {
    auto m = sample_moments(n, rng, [](RngStream& r) { return r.weibull(2.0); });
    CHECK(m.mean == doctest::Approx(std::tgamma(1.5)).epsilon(0.01));
  }
  SUBCASE("laplace") {
    auto m = sample_moments(n, rng, [](RngStream& r) { return r.laplace(); });
    CHECK(std::abs(m.mean) < 0.02);
    CHECK(m.var == doctest::Approx(2.0).epsilon(0.05));
  }
  SUBCASE("sign is a fair Rademacher coin") {
    auto m = sample_moments(n, rng, [](RngStream& r) { return r.sign(); });
    CHECK(std::abs(m.mean) < 0.01);
    CHECK(m.var == doctest::Approx(1.0).epsilon(0.01));
  }
  SUBCASE("geometric on {1,2,...} with mean 1/p") {
    auto m = sample_moments(n, rng, [](RngStream& r) { return r.geometric(0.3); });
    CHECK(m.mean == doctest::Approx(1.0 / 0.3).epsilon(0.02));
    CHECK(m.var == doctest::Approx(0.7 / 0.09).epsilon(0.05));
  }
  SUBCASE("poisson") {
    auto m = sample_moments(n, rng, [](RngStream& r) { return r.poisson(4.0); });
    CHECK(m.mean == doctest::Approx(4.0).epsilon(0.01));
    CHECK(m.var == doctest::Approx(4.0).epsilon(0.05));
    // Large-mean branch (PTRS).
    auto big = sample_moments(n / 4, rng, [](RngStream& r) { return r.poisson(900.0); });
    CHECK(big.mean == doctest::Approx(900.0).epsilon(0.002));
    CHECK(big.var == doctest::Approx(900.0).epsilon(0.05));
  }
  SUBCASE("binomial") {
    auto m = sample_moments(n / 4, rng,
                            [](RngStream& r) { return r.binomial(1000.0, 0.3); });
    CHECK(m.mean == doctest::Approx(300.0).epsilon(0.002));
    CHECK(m.var == doctest::Approx(210.0).epsilon(0.08));
  }
  SUBCASE("gamma") {
    auto m = sample_moments(n, rng, [](RngStream& r) { return r.gamma(2.5); });
    CHECK(m.mean == doctest::Approx(2.5).epsilon(0.02));
    CHECK(m.var == doctest::Approx(2.5).epsilon(0.05));
    auto small = sample_moments(n, rng, [](RngStream& r) { return r.gamma(0.4); });
    CHECK(small.mean == doctest::Approx(0.4).epsilon(0.03));
  }
}

TEST_CASE("positive stable draws match the Laplace transform exp(-s^delta)") {
  const std::size_t n = 200000;
  for (double delta : {0.4, 0.7, 1.0}) {
    RngStream rng(99, 3);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = std::exp(-rng.positive_stable(delta));
      sum += v;
      sumsq += v * v;
    }
    const double mean = sum / static_cast<double>(n);
    const double se = std::sqrt(
        (sumsq / static_cast<double>(n) - mean * mean) / static_cast<double>(n));
    const double exact = std::exp(-1.0);  // E exp(-S) with s = 1
    INFO("delta = ", delta);
    CHECK(std::abs(mean - exact) < 4.0 * se + 1e-12);
  }
}

TEST_CASE("symmetric stable draws match the characteristic function exp(-|t|^alpha)") {
  const std::size_t n = 200000;
  for (double alpha : {0.8, 1.2, 2.0}) {
    RngStream rng(77, 5);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = std::cos(rng.symmetric_stable(alpha));
      sum += v;
      sumsq += v * v;
    }
    const double mean = sum / static_cast<double>(n);
    const double se = std::sqrt(
        (sumsq / static_cast<double>(n) - mean * mean) / static_cast<double>(n));
    const double exact = std::exp(-1.0);  // E cos(t X) at t = 1
    INFO("alpha = ", alpha);
    CHECK(std::abs(mean - exact) < 4.0 * se + 1e-12);
  }
}
