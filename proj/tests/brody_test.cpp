#include "rmtsw/brody.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "test_util.hpp"

using rmtsw::brody_B;
using rmtsw::brody_inverse_cdf;
using rmtsw::brody_pdf;
using rmtsw::fit_brody;
using rmtsw::fit_mse;
using rmtsw::make_histogram;
using rmtsw::poisson_pdf;
using rmtsw::wigner_pdf;

namespace {

// High-precision reference values, frozen from an independent
// arbitrary-precision evaluation (40 digits) before this module was written.
constexpr double kB_half = 0.8577245662047803260562343529628473034534;
constexpr double kPdf_half_half = 0.6717747687503324905076222749169200042804;
constexpr double kPdf_2_03 = 0.1566785225706044941744806960473805412732;
constexpr double kPdf_1_1 = 0.7161859363405691527815841025337974893733;

double brody_cdf(double x, double q) {
  return -std::expm1(-brody_B(q) * std::pow(x, 1.0 + q));
}

std::vector<double> brody_samples(double q, std::size_t n, testutil::SplitMix64& rng) {
  std::vector<double> out(n);
  for (double& v : out) v = brody_inverse_cdf(rng.uniform(), q);
  return out;
}

}  // namespace

TEST_CASE("normalization constant") {
  CHECK(brody_B(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(brody_B(1.0) == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-14));
  CHECK(brody_B(0.5) == doctest::Approx(kB_half).epsilon(1e-13));
  CHECK_THROWS_AS(brody_B(-0.1), std::domain_error);
}

TEST_CASE("density point values") {
  CHECK(brody_pdf(1.0, 0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(brody_pdf(1.0, 1.0) == doctest::Approx(kPdf_1_1).epsilon(1e-13));
  CHECK(brody_pdf(0.5, 0.5) == doctest::Approx(kPdf_half_half).epsilon(1e-13));
  CHECK(brody_pdf(2.0, 0.3) == doctest::Approx(kPdf_2_03).epsilon(1e-13));

  CHECK(brody_pdf(0.0, 0.0) == 1.0);
  CHECK(brody_pdf(0.0, 0.5) == 0.0);
  CHECK(poisson_pdf(0.0) == 1.0);
  CHECK(wigner_pdf(0.0) == 0.0);

  CHECK_THROWS_AS(brody_pdf(-1e-9, 0.5), std::domain_error);
  CHECK_THROWS_AS(brody_pdf(1.0, -0.2), std::domain_error);
  CHECK_THROWS_AS(poisson_pdf(-1.0), std::domain_error);
  CHECK_THROWS_AS(wigner_pdf(-1.0), std::domain_error);
}

TEST_CASE("density integrates to one with unit mean") {
  // The tail past x = 20 contributes less than 5e-8 to either integral for
  // every q in the grid.
  const std::vector<double> knots = {0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 20.0};
  for (int i = 0; i <= 12; ++i) {
    const double q = 0.1 * i;
    const double mass = testutil::integrate_piecewise(
        [q](double x) { return brody_pdf(x, q); }, knots, 1e-9);
    const double mean = testutil::integrate_piecewise(
        [q](double x) { return x * brody_pdf(x, q); }, knots, 1e-9);
    CAPTURE(q);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(mean == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("limits match the closed forms") {
  double sup0 = 0.0;
  double sup1 = 0.0;
  for (int i = 0; i <= 5000; ++i) {
    const double x = 5.0 * i / 5000.0;
    sup0 = std::max(sup0, std::abs(brody_pdf(x, 0.0) - poisson_pdf(x)));
    sup1 = std::max(sup1, std::abs(brody_pdf(x, 1.0) - wigner_pdf(x)));
  }
  CHECK(sup0 < 1e-12);
  CHECK(sup1 < 1e-12);
}

TEST_CASE("inverse CDF") {
  CHECK(brody_inverse_cdf(-std::expm1(-1.0), 0.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(brody_inverse_cdf(0.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(brody_inverse_cdf(1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(brody_inverse_cdf(-0.5, 0.5), std::domain_error);

  for (double q : {0.0, 0.3, 0.7, 1.0, 1.2}) {
    for (int i = 1; i <= 99; ++i) {
      const double u = i / 100.0;
      CAPTURE(q);
      CAPTURE(u);
      CHECK(brody_cdf(brody_inverse_cdf(u, q), q) == doctest::Approx(u).epsilon(1e-12));
    }
  }
}

TEST_CASE("inverse CDF sampling has unit mean") {
  testutil::SplitMix64 rng{0x1234abcdULL};
  const auto samples = brody_samples(0.5, 1000000, rng);
  CHECK(testutil::mean_of(samples) == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("histogram binning") {
  SUBCASE("point mass lands in one bin") {
    const std::vector<double> samples(100, 2.5);
    const auto hist = make_histogram(samples);
    REQUIRE(hist.n_bins() == 300);
    CHECK(hist.bin_width() == doctest::Approx(5.0 / 300.0).epsilon(1e-15));
    CHECK(hist.total_samples == 100);
    CHECK(hist.retained_samples == 100);
    double weighted = 0.0;
    for (std::size_t i = 0; i < hist.n_bins(); ++i) {
      if (i == 150) {
        CHECK(hist.densities[i] == doctest::Approx(60.0).epsilon(1e-12));
      } else {
        CHECK(hist.densities[i] == 0.0);
      }
      weighted += hist.densities[i] * hist.bin_width();
    }
    CHECK(weighted == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("out-of-range samples count toward the total only") {
    const std::vector<double> samples = {6.0};
    const auto hist = make_histogram(samples);
    CHECK(hist.total_samples == 1);
    CHECK(hist.retained_samples == 0);
    for (double d : hist.densities) CHECK(d == 0.0);
  }

  SUBCASE("partial retention normalizes by the total") {
    const std::vector<double> samples = {1.0, 10.0};
    const auto hist = make_histogram(samples);
    CHECK(hist.total_samples == 2);
    CHECK(hist.retained_samples == 1);
    double mass = 0.0;
    for (double d : hist.densities) mass += d * hist.bin_width();
    CHECK(mass == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("edges are uniform and ascending") {
    const std::vector<double> samples = {1.0};
    const auto hist = make_histogram(samples, 10, 2.0);
    REQUIRE(hist.bin_edges.size() == 11);
    CHECK(hist.bin_edges.front() == 0.0);
    CHECK(hist.bin_edges.back() == doctest::Approx(2.0).epsilon(1e-15));
    for (std::size_t i = 0; i + 1 < hist.bin_edges.size(); ++i) {
      CHECK(hist.bin_edges[i] < hist.bin_edges[i + 1]);
    }
    CHECK(hist.bin_center(0) == doctest::Approx(0.1).epsilon(1e-15));
  }

  SUBCASE("invalid input") {
    CHECK_THROWS_AS(make_histogram(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(make_histogram(std::vector<double>{-0.5}), std::invalid_argument);
    CHECK_THROWS_AS(make_histogram(std::vector<double>{1.0}, 0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(make_histogram(std::vector<double>{1.0}, 10, 0.0), std::invalid_argument);
  }

  SUBCASE("exponential sample matches the density") {
    testutil::SplitMix64 rng{77};
    const auto samples = testutil::exponential_samples(100000, rng);
    const auto hist = make_histogram(samples);
    double mse = 0.0;
    for (std::size_t i = 0; i < hist.n_bins(); ++i) {
      const double diff = hist.densities[i] - std::exp(-hist.bin_center(i));
      mse += diff * diff;
    }
    mse /= static_cast<double>(hist.n_bins());
    CHECK(mse < 5e-3);
  }
}

TEST_CASE("fit recovers the generating parameter") {
  testutil::SplitMix64 rng{0xfeedbeefULL};
  for (double q_true : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto samples = brody_samples(q_true, 100000, rng);
    const auto fit = fit_brody(make_histogram(samples));
    CAPTURE(q_true);
    CHECK(std::abs(fit.q - q_true) <= 0.05);
    CHECK(fit.mse < 5e-3);
    CHECK(fit.B == doctest::Approx(brody_B(fit.q)).epsilon(1e-12));
    CHECK(fit.mse == doctest::Approx(fit_mse(make_histogram(samples), fit.q)).epsilon(1e-14));
  }
}

TEST_CASE("fit is exact on a noiseless histogram") {
  rmtsw::Histogram hist;
  const int n = 300;
  hist.bin_edges.resize(n + 1);
  for (int i = 0; i <= n; ++i) hist.bin_edges[i] = 5.0 * i / n;
  hist.densities.resize(n);
  for (int i = 0; i < n; ++i) hist.densities[i] = brody_pdf(hist.bin_center(i), 0.5);
  hist.total_samples = 100000;
  hist.retained_samples = 100000;

  const auto fit = fit_brody(hist);
  CHECK(std::abs(fit.q - 0.5) <= 1e-3);
  CHECK(fit.mse < 1e-10);
}

TEST_CASE("fit preconditions") {
  SUBCASE("too few retained samples") {
    const std::vector<double> samples = {1.0, 2.0};
    CHECK_THROWS_AS(fit_brody(make_histogram(samples)), rmtsw::InsufficientRetainedError);
  }
  SUBCASE("retention floor is configurable") {
    testutil::SplitMix64 rng{5};
    const auto samples = testutil::exponential_samples(50, rng);
    rmtsw::FitOptions options;
    options.min_retained = 10;
    CHECK_NOTHROW(fit_brody(make_histogram(samples), options));
  }
  SUBCASE("no mass in the fit window") {
    const std::vector<double> samples = {6.0, 7.0, 8.0};
    rmtsw::FitOptions options;
    options.min_retained = 0;
    CHECK_THROWS_AS(fit_brody(make_histogram(samples), options), rmtsw::NoMassError);
  }
}

TEST_CASE("clamped parameter") {
  rmtsw::BrodyFit fit;
  fit.q = 1.17;
  CHECK(fit.q_clamped() == 1.0);
  fit.q = 0.42;
  CHECK(fit.q_clamped() == 0.42);
}
