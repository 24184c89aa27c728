#include <doctest.h>

#include <cmath>
#include <limits>

#include "heavytail/mittag_leffler.hpp"

using namespace heavytail;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

// E_{1/2}(z) = exp(z^2) erfc(-z), evaluated in extended precision so the
// product stays accurate when the factors are huge/tiny.
long double e_half_reference(long double z) {
  return std::exp(z * z) * std::erfc(-z);
}

}  // namespace

TEST_CASE("frozen values of E_delta(-1)") {
  CHECK(rel_err(ml_e(0.5, -1.0), 0.42758357615580700) < 1e-12);
  CHECK(rel_err(ml_e(0.3, -1.0), 0.45659440832969067) < 1e-12);
  CHECK(rel_err(ml_e(0.7, -1.0), 0.39961197811559938) < 1e-12);
}

TEST_CASE("E_1 is the exponential") {
  for (int i = 0; i <= 100; ++i) {
    const double x = 0.1 * i;
    CHECK(std::abs(ml_e(1.0, -x) - std::exp(-x)) < 1e-12);
  }
}

TEST_CASE("E_{1/2} identity against exp(z^2) erfc(-z)") {
  for (double z : {-10.0, -5.0, -2.0, -1.0, -0.5, -0.1, 0.0, 0.1, 1.0, 3.0}) {
    const long double ref = e_half_reference(static_cast<long double>(z));
    INFO("z = ", z);
    CHECK(rel_err(ml_e(0.5, z), static_cast<double>(ref)) < 1e-11);
  }
}

TEST_CASE("frozen Mittag-Leffler density and distribution values") {
  CHECK(rel_err(ml_pdf(0.7, 1.5), 0.13019980320078571) < 1e-12);
  CHECK(rel_err(ml_cdf(0.7, 1.5), 0.68308137351215877) < 1e-12);
  CHECK(rel_err(ml_pdf(0.5, 1.0), 0.13660600739194928) < 1e-12);
  CHECK(rel_err(ml_cdf(0.5, 1.0), 0.57241642384419300) < 1e-12);
  CHECK(rel_err(ml_pdf(0.3, 2.0), 0.037533603336689988) < 1e-12);
  CHECK(rel_err(ml_cdf(0.3, 2.0), 0.59631878091210692) < 1e-12);
}

TEST_CASE("delta = 1 collapses to the unit exponential") {
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    CHECK(std::abs(ml_pdf(1.0, x) - std::exp(-x)) < 1e-12);
    CHECK(std::abs(ml_cdf(1.0, x) - (1.0 - std::exp(-x))) < 1e-12);
  }
}

TEST_CASE("series and integral density evaluations agree") {
  // The acceptance run sweeps the full 4 x 50 grid; keep a representative
  // slice here so the unit suite stays fast.
  for (double delta : {0.3, 0.5, 0.7, 0.9}) {
    for (double x : {0.1, 0.5, 1.0, 2.5, 5.0, 10.0}) {
      const double s = ml_pdf_series(delta, x);
      const double i = ml_pdf_integral(delta, x);
      INFO("delta = ", delta, ", x = ", x);
      CHECK(std::abs(s - i) < 1e-6);
    }
  }
}

TEST_CASE("asymptotic branch matches the integral far out") {
  for (double delta : {0.3, 0.5, 0.7}) {
    for (double x : {50.0, 100.0, 500.0}) {
      const double a = ml_pdf_asymptotic(delta, x);
      const double i = ml_pdf_integral(delta, x);
      INFO("delta = ", delta, ", x = ", x);
      CHECK(rel_err(a, i) < 1e-6);
    }
  }
}

TEST_CASE("distribution function basics") {
  CHECK(ml_cdf(0.6, 0.0) == 0.0);
  CHECK(ml_cdf(0.6, 1e9) == doctest::Approx(1.0).epsilon(1e-4));
  // Monotone on a coarse grid.
  double prev = 0.0;
  for (int i = 1; i <= 60; ++i) {
    const double x = 0.25 * i;
    const double c = ml_cdf(0.6, x);
    CHECK(c >= prev);
    prev = c;
  }
  // survival + cdf = 1 to double rounding where both are O(1).
  for (double x : {0.3, 1.0, 3.0}) {
    CHECK(std::abs(ml_cdf(0.6, x) + ml_survival(0.6, x) - 1.0) < 1e-12);
  }
}
