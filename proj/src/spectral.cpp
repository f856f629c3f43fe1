#include "rmtsw/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rmtsw/csv.hpp"

namespace rmtsw {

namespace {

// Least-squares polynomial fit of y against sorted x, evaluated back at every
// x. The domain is mapped to [-1, 1] first; raw powers of the standardized
// values would make the system ill-conditioned well below degree 7.
std::vector<double> fit_poly_eval(const std::vector<double>& x,
                                  const std::vector<double>& y, int deg) {
  const auto n = static_cast<Eigen::Index>(x.size());
  const double lo = x.front();
  const double span = x.back() - lo;

  Eigen::MatrixXd a(n, deg + 1);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = 2.0 * (x[static_cast<std::size_t>(i)] - lo) / span - 1.0;
    double p = 1.0;
    for (int j = 0; j <= deg; ++j) {
      a(i, j) = p;
      p *= t;
    }
    b(i) = y[static_cast<std::size_t>(i)];
  }
  Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);

  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = 2.0 * (x[i] - lo) / span - 1.0;
    double v = c(deg);
    for (int j = deg - 1; j >= 0; --j) v = v * t + c(j);
    out[i] = v;
  }
  return out;
}

// Sort values, take consecutive differences, rescale to unit mean.
std::vector<double> spacings_of(std::vector<double>& values, const std::string& word) {
  std::sort(values.begin(), values.end());
  std::vector<double> sp(values.size() - 1);
  for (std::size_t i = 0; i + 1 < values.size(); ++i) sp[i] = values[i + 1] - values[i];
  const double mean = std::accumulate(sp.begin(), sp.end(), 0.0) / static_cast<double>(sp.size());
  if (!(mean > 0.0)) {
    throw DegenerateSeriesError("all unfolded values coincide for word \"" + word + "\"");
  }
  for (double& s : sp) s /= mean;
  return sp;
}

}  // namespace

StandardizedSeries weighted_standardize(const SpacingSeries& series) {
  const std::size_t n = series.samples.size();
  if (n < 2) {
    throw InsufficientSamplesError("need at least 2 articles to standardize word \"" +
                                   series.word + "\", got " + std::to_string(n));
  }

  double wsum = 0.0;
  double mean = 0.0;
  for (const SpacingSample& s : series.samples) {
    const double w = static_cast<double>(s.article_length);
    wsum += w;
    mean += w * s.avg_distance;
  }
  mean /= wsum;

  double var = 0.0;
  for (const SpacingSample& s : series.samples) {
    const double w = static_cast<double>(s.article_length);
    const double d = s.avg_distance - mean;
    var += w * d * d;
  }
  var /= wsum;

  const double sd = std::sqrt(var);
  if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) {
    throw DegenerateSeriesError("zero weighted variance for word \"" + series.word + "\"");
  }

  StandardizedSeries out;
  out.word = series.word;
  out.values.reserve(n);
  for (const SpacingSample& s : series.samples) {
    out.values.push_back((s.avg_distance - mean) / sd);
  }
  return out;
}

UnfoldedSeries unfold(const StandardizedSeries& series, int poly_degree) {
  if (poly_degree < 1 || poly_degree % 2 == 0) {
    throw std::invalid_argument("unfolding degree must be odd and >= 1, got " +
                                std::to_string(poly_degree));
  }
  const std::size_t n = series.values.size();
  if (n < static_cast<std::size_t>(poly_degree) + 2) {
    throw InsufficientSamplesError("need at least " + std::to_string(poly_degree + 2) +
                                   " values to unfold word \"" + series.word +
                                   "\" at degree " + std::to_string(poly_degree) +
                                   ", got " + std::to_string(n));
  }

  std::vector<double> x = series.values;
  std::sort(x.begin(), x.end());
  if (!(x.back() > x.front())) {
    throw DegenerateSeriesError("constant series cannot be unfolded for word \"" +
                                series.word + "\"");
  }

  // Staircase: the i-th smallest value has cumulative count i.
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<double>(i + 1);

  UnfoldedSeries out;
  out.word = series.word;
  out.unfolded = fit_poly_eval(x, y, poly_degree);
  out.spacings = spacings_of(out.unfolded, series.word);
  return out;
}

UnfoldedSeries detrend(const UnfoldedSeries& series, const EmdOptions& emd_options) {
  UnfoldedSeries out;
  out.word = series.word;

  const std::size_t n = series.unfolded.size();
  if (n < kEmdMinLength) {
    out = series;
    out.detrend_skipped = true;
    return out;
  }

  // Fluctuation around the ideal staircase. Subtracting the EMD residue from
  // delta (rather than from the unfolded values) keeps the staircase trend
  // itself intact.
  std::vector<double> delta(n);
  for (std::size_t i = 0; i < n; ++i) {
    delta[i] = series.unfolded[i] - static_cast<double>(i + 1);
  }

  const EmdResult emd = emd_decompose(delta, emd_options);

  out.unfolded.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.unfolded[i] = static_cast<double>(i + 1) + delta[i] - emd.residue[i];
  }
  out.spacings = spacings_of(out.unfolded, series.word);
  out.detrend_skipped = false;
  return out;
}

void write_unfolded_csv(const UnfoldedSeries& series, const std::string& path) {
  CsvWriter w(path);
  w.write_row({"index", "value", "spacing"});
  for (std::size_t i = 0; i < series.unfolded.size(); ++i) {
    w.write_row({std::to_string(i + 1), format_double(series.unfolded[i]),
                 i < series.spacings.size() ? format_double(series.spacings[i]) : ""});
  }
  w.close();
}

}  // namespace rmtsw
