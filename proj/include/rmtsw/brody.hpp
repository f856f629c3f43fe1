#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace rmtsw {

/// Normalization constant of the Brody distribution,
///   B(q) = Gamma((2+q)/(1+q))^(1+q).
/// B(0) = 1 (Poisson) and B(1) = pi/4 (Wigner surmise). The constant is
/// chosen so the distribution has unit mean for every q.
double brody_B(double q);

/// Brody nearest-neighbor spacing density,
///   P_q(x) = (1+q) B(q) x^q exp(-B(q) x^(1+q)),
/// interpolating between the Poisson law (q = 0) and the GOE Wigner
/// surmise (q = 1).
double brody_pdf(double x, double q);

/// exp(-x), the Poisson spacing law.
double poisson_pdf(double x);

/// (pi/2) x exp(-pi x^2 / 4), the GOE Wigner surmise.
double wigner_pdf(double x);

/// Exact inverse of the Brody CDF 1 - exp(-B(q) x^(1+q)), for u in (0,1):
///   x = (-ln(1-u) / B(q))^(1/(1+q)).
/// Used for inverse-transform sampling.
double brody_inverse_cdf(double u, double q);

/// Density histogram of spacings on uniform bins over [0, max_x].
/// Samples above max_x are dropped from the bins but still count toward
/// total_samples, so the retained density mass can be below 1.
struct Histogram {
  std::vector<double> bin_edges;  // n_bins + 1 ascending edges, from 0
  std::vector<double> densities;  // count_i / (total_samples * bin_width)
  std::uint64_t total_samples = 0;
  std::uint64_t retained_samples = 0;

  std::size_t n_bins() const { return densities.size(); }
  double max_x() const { return bin_edges.back(); }
  double bin_width() const { return bin_edges.back() / static_cast<double>(n_bins()); }
  double bin_center(std::size_t i) const { return 0.5 * (bin_edges[i] + bin_edges[i + 1]); }
};

Histogram make_histogram(std::span<const double> spacings, int n_bins = 300,
                         double max_x = 5.0);

/// Result of a binned least-squares Brody fit.
struct BrodyFit {
  double q = 0.0;    // raw optimum, may exceed 1 up to the fit bound
  double B = 1.0;    // brody_B(q)
  double mse = 0.0;  // mean squared residual over all bins
  int n_bins = 0;
  double max_x = 0.0;

  double q_clamped() const { return q < 0.0 ? 0.0 : (q > 1.0 ? 1.0 : q); }
};

struct FitOptions {
  double q_max = 1.2;
  double grid_step = 0.01;
  // Minimum retained samples required before fitting; -1 means "at least
  // as many as there are bins".
  std::int64_t min_retained = -1;
};

/// Mean squared residual between histogram densities and the Brody density
/// at bin centers; every bin enters the mean, including empty ones.
double fit_mse(const Histogram& hist, double q);

/// Fit the Brody parameter by grid search over [0, q_max] followed by one
/// parabolic refinement around the best grid point. Deterministic.
BrodyFit fit_brody(const Histogram& hist, const FitOptions& options = {});

struct NoMassError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientRetainedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rmtsw
