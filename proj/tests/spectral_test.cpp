#include "rmtsw/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

#include "test_util.hpp"

using rmtsw::detrend;
using rmtsw::SpacingSample;
using rmtsw::SpacingSeries;
using rmtsw::StandardizedSeries;
using rmtsw::unfold;
using rmtsw::UnfoldedSeries;
using rmtsw::weighted_standardize;

namespace {

SpacingSeries make_series(const std::vector<double>& values,
                          const std::vector<std::uint64_t>& weights) {
  SpacingSeries s;
  s.word = "w";
  for (std::size_t i = 0; i < values.size(); ++i) {
    s.samples.push_back({values[i], weights[i], "doc" + std::to_string(i)});
  }
  return s;
}

StandardizedSeries standardized_from(std::vector<double> values) {
  StandardizedSeries s;
  s.word = "w";
  s.values = std::move(values);
  return s;
}

}  // namespace

TEST_CASE("standardization with article-length weights") {
  SUBCASE("symmetric two-point case") {
    const auto out = weighted_standardize(make_series({2.0, 4.0}, {1, 1}));
    REQUIRE(out.values.size() == 2);
    CHECK(out.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(out.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("unequal weights, pinned values") {
    // Frozen from an independent evaluation of the weighted-moment formula
    // for values {1,2,3} with weights {1,1,2}.
    const auto out = weighted_standardize(make_series({1.0, 2.0, 3.0}, {1, 1, 2}));
    REQUIRE(out.values.size() == 3);
    CHECK(out.values[0] == doctest::Approx(-1.5075567228888181).epsilon(1e-12));
    CHECK(out.values[1] == doctest::Approx(-0.30151134457776363).epsilon(1e-12));
    CHECK(out.values[2] == doctest::Approx(0.9045340337332909).epsilon(1e-12));
  }

  SUBCASE("weighted moments are normalized") {
    testutil::SplitMix64 rng{42};
    std::vector<double> values(200);
    std::vector<std::uint64_t> weights(200);
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = 1.0 + 30.0 * rng.uniform();
      weights[i] = 50 + rng.below(2000);
    }
    const auto out = weighted_standardize(make_series(values, weights));

    double wsum = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
      wsum += static_cast<double>(weights[i]);
      mean += static_cast<double>(weights[i]) * out.values[i];
    }
    mean /= wsum;
    double var = 0.0;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
      var += static_cast<double>(weights[i]) * (out.values[i] - mean) * (out.values[i] - mean);
    }
    var /= wsum;
    CHECK(std::abs(mean) < 1e-9);
    CHECK(var == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("degenerate and undersized input") {
    CHECK_THROWS_AS(weighted_standardize(make_series({2.5, 2.5, 2.5}, {1, 7, 3})),
                    rmtsw::DegenerateSeriesError);
    CHECK_THROWS_AS(weighted_standardize(make_series({2.5}, {1})),
                    rmtsw::InsufficientSamplesError);
  }
}

TEST_CASE("unfolding") {
  SUBCASE("affine staircase gives unit spacings at degree 1") {
    std::vector<double> values(10);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = 0.37 * static_cast<double>(i);
    const auto out = unfold(standardized_from(values), 1);
    REQUIRE(out.spacings.size() == 9);
    for (double s : out.spacings) CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("exponential sample unfolds to unit-mean spacings") {
    testutil::SplitMix64 rng{7};
    const auto values = testutil::exponential_samples(5000, rng);
    const auto out = unfold(standardized_from(values), 7);
    REQUIRE(out.spacings.size() == 4999);
    CHECK(std::abs(testutil::mean_of(out.spacings) - 1.0) < 1e-12);
    CHECK(testutil::variance_of(out.spacings) == doctest::Approx(1.0).epsilon(0.1));
    for (std::size_t i = 0; i + 1 < out.unfolded.size(); ++i) {
      REQUIRE(out.unfolded[i] <= out.unfolded[i + 1]);
    }
  }

  SUBCASE("invariant under affine input transforms") {
    testutil::SplitMix64 rng{8};
    const auto values = testutil::exponential_samples(500, rng);
    std::vector<double> scaled(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) scaled[i] = 3.7 * values[i] - 2.0;

    const auto base = unfold(standardized_from(values), 7);
    const auto moved = unfold(standardized_from(scaled), 7);
    REQUIRE(base.spacings.size() == moved.spacings.size());
    for (std::size_t i = 0; i < base.spacings.size(); ++i) {
      CHECK(base.spacings[i] == doctest::Approx(moved.spacings[i]).epsilon(1e-9));
    }
  }

  SUBCASE("input validation") {
    std::vector<double> eight(8);
    for (std::size_t i = 0; i < eight.size(); ++i) eight[i] = static_cast<double>(i);
    CHECK_THROWS_AS(unfold(standardized_from(eight), 7), rmtsw::InsufficientSamplesError);
    CHECK_THROWS_AS(unfold(standardized_from(eight), 4), std::invalid_argument);
    CHECK_THROWS_AS(unfold(standardized_from(eight), 0), std::invalid_argument);
    CHECK_THROWS_AS(unfold(standardized_from({1.0, 1.0, 1.0, 1.0}), 1),
                    rmtsw::DegenerateSeriesError);
  }
}

TEST_CASE("detrending") {
  SUBCASE("zero fluctuation is the identity") {
    UnfoldedSeries series;
    series.word = "w";
    for (int i = 1; i <= 20; ++i) series.unfolded.push_back(static_cast<double>(i));
    series.spacings.assign(19, 1.0);
    const auto out = detrend(series);
    CHECK(!out.detrend_skipped);
    REQUIRE(out.unfolded.size() == series.unfolded.size());
    for (std::size_t i = 0; i < out.unfolded.size(); ++i) {
      CHECK(out.unfolded[i] == doctest::Approx(series.unfolded[i]).epsilon(1e-12));
    }
    for (double s : out.spacings) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("smooth drift is flattened") {
    UnfoldedSeries series;
    series.word = "w";
    const std::size_t n = 200;
    for (std::size_t i = 0; i < n; ++i) {
      const double k = static_cast<double>(i + 1);
      series.unfolded.push_back(k + 0.001 * k * k);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      series.spacings.push_back(series.unfolded[i + 1] - series.unfolded[i]);
    }
    const double mean = testutil::mean_of(series.spacings);
    for (double& s : series.spacings) s /= mean;

    const auto out = detrend(series);
    CHECK(!out.detrend_skipped);
    CHECK(std::abs(testutil::mean_of(out.spacings) - 1.0) < 1e-12);
    CHECK(testutil::variance_of(out.spacings) < testutil::variance_of(series.spacings));
  }

  SUBCASE("short series pass through unchanged") {
    UnfoldedSeries series;
    series.word = "w";
    series.unfolded = {1.0, 2.1, 2.9, 4.2, 5.0, 6.1};
    series.spacings = {1.1, 0.8, 1.3, 0.8, 1.1};
    const auto out = detrend(series);
    CHECK(out.detrend_skipped);
    CHECK(out.unfolded == series.unfolded);
    CHECK(out.spacings == series.spacings);
  }

  SUBCASE("spacing statistics stay exponential for uncorrelated input") {
    testutil::SplitMix64 rng{12345};
    const auto values = testutil::exponential_samples(100000, rng);
    const auto unfolded = unfold(standardized_from(values), 7);
    const auto detrended = detrend(unfolded);

    const auto exp_cdf = [](double s) { return -std::expm1(-s); };
    CHECK(testutil::ks_distance(unfolded.spacings, exp_cdf) < 0.03);
    CHECK(testutil::ks_distance(detrended.spacings, exp_cdf) < 0.03);
    // rescale is exact division; only summation rounding remains at n = 1e5
    CHECK(std::abs(testutil::mean_of(detrended.spacings) - 1.0) < 1e-10);
  }
}

TEST_CASE("unfolded series dump") {
  testutil::TempDir dir("unfolded");
  UnfoldedSeries series;
  series.word = "w";
  series.unfolded = {1.0, 2.25, 3.5};
  series.spacings = {1.0, 1.0};
  const auto path = dir.path() / "unfolded_w.csv";
  rmtsw::write_unfolded_csv(series, path.string());

  const auto lines = testutil::split_lines(testutil::read_file(path));
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "index,value,spacing");
  CHECK(lines[1] == "1,1,1");
  CHECK(lines[2] == "2,2.25,1");
  CHECK(lines[3] == "3,3.5,");
}
