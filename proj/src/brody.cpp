#include "rmtsw/brody.hpp"

#include <algorithm>
#include <cmath>

namespace rmtsw {

double brody_B(double q) {
  if (q < 0.0 || !std::isfinite(q)) {
    throw std::domain_error("brody_B: q must be >= 0");
  }
  return std::pow(std::tgamma((2.0 + q) / (1.0 + q)), 1.0 + q);
}

double brody_pdf(double x, double q) {
  if (x < 0.0 || !std::isfinite(x)) {
    throw std::domain_error("brody_pdf: x must be >= 0");
  }
  const double b = brody_B(q);
  // pow(0,0) == 1, so the q = 0, x = 0 corner falls out of the formula.
  return (1.0 + q) * b * std::pow(x, q) * std::exp(-b * std::pow(x, 1.0 + q));
}

double poisson_pdf(double x) {
  if (x < 0.0 || !std::isfinite(x)) {
    throw std::domain_error("poisson_pdf: x must be >= 0");
  }
  return std::exp(-x);
}

double wigner_pdf(double x) {
  if (x < 0.0 || !std::isfinite(x)) {
    throw std::domain_error("wigner_pdf: x must be >= 0");
  }
  constexpr double kPi = 3.14159265358979323846;
  return 0.5 * kPi * x * std::exp(-0.25 * kPi * x * x);
}

double brody_inverse_cdf(double u, double q) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("brody_inverse_cdf: u must be in (0,1)");
  }
  const double b = brody_B(q);
  return std::pow(-std::log1p(-u) / b, 1.0 / (1.0 + q));
}

Histogram make_histogram(std::span<const double> spacings, int n_bins, double max_x) {
  if (spacings.empty()) {
    throw std::invalid_argument("make_histogram: no spacings");
  }
  if (n_bins < 1) {
    throw std::invalid_argument("make_histogram: n_bins must be >= 1");
  }
  if (!(max_x > 0.0)) {
    throw std::invalid_argument("make_histogram: max_x must be > 0");
  }

  Histogram hist;
  hist.bin_edges.resize(static_cast<std::size_t>(n_bins) + 1);
  for (int i = 0; i <= n_bins; ++i) {
    hist.bin_edges[static_cast<std::size_t>(i)] = max_x * i / n_bins;
  }

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n_bins), 0);
  std::uint64_t retained = 0;
  for (double s : spacings) {
    if (!(s >= 0.0)) {
      throw std::invalid_argument("make_histogram: negative or NaN spacing");
    }
    if (s > max_x) continue;
    auto idx = static_cast<std::int64_t>(std::floor(s * n_bins / max_x));
    if (idx >= n_bins) idx = n_bins - 1;  // s == max_x lands in the top bin
    ++counts[static_cast<std::size_t>(idx)];
    ++retained;
  }

  hist.total_samples = spacings.size();
  hist.retained_samples = retained;
  const double width = max_x / n_bins;
  hist.densities.resize(static_cast<std::size_t>(n_bins));
  for (int i = 0; i < n_bins; ++i) {
    hist.densities[static_cast<std::size_t>(i)] =
        static_cast<double>(counts[static_cast<std::size_t>(i)]) /
        (static_cast<double>(hist.total_samples) * width);
  }
  return hist;
}

double fit_mse(const Histogram& hist, double q) {
  double sum = 0.0;
  for (std::size_t i = 0; i < hist.n_bins(); ++i) {
    const double r = hist.densities[i] - brody_pdf(hist.bin_center(i), q);
    sum += r * r;
  }
  return sum / static_cast<double>(hist.n_bins());
}

BrodyFit fit_brody(const Histogram& hist, const FitOptions& options) {
  const std::int64_t min_retained =
      options.min_retained < 0 ? static_cast<std::int64_t>(hist.n_bins())
                               : options.min_retained;
  if (static_cast<std::int64_t>(hist.retained_samples) < min_retained) {
    throw InsufficientRetainedError("fit_brody: too few retained samples");
  }
  if (std::all_of(hist.densities.begin(), hist.densities.end(),
                  [](double d) { return d == 0.0; })) {
    throw NoMassError("fit_brody: no mass in fit window");
  }

  const double step = options.grid_step;
  const auto n_steps = static_cast<int>(std::llround(options.q_max / step));

  int best_i = 0;
  double best_q = 0.0;
  double best_mse = fit_mse(hist, 0.0);
  for (int i = 1; i <= n_steps; ++i) {
    const double q = std::min(i * step, options.q_max);
    const double m = fit_mse(hist, q);
    if (m < best_mse) {
      best_mse = m;
      best_q = q;
      best_i = i;
    }
  }

  // Parabolic refinement through the best grid point and its neighbors.
  if (best_i > 0 && best_i < n_steps) {
    const double m_lo = fit_mse(hist, (best_i - 1) * step);
    const double m_hi = fit_mse(hist, std::min((best_i + 1) * step, options.q_max));
    const double denom = m_hi - 2.0 * best_mse + m_lo;
    if (denom > 0.0) {
      double q_ref = best_q - 0.5 * step * (m_hi - m_lo) / denom;
      q_ref = std::clamp(q_ref, best_q - step, best_q + step);
      q_ref = std::clamp(q_ref, 0.0, options.q_max);
      const double m_ref = fit_mse(hist, q_ref);
      if (m_ref < best_mse) {
        best_mse = m_ref;
        best_q = q_ref;
      }
    }
  }

  BrodyFit fit;
  fit.q = best_q;
  fit.B = brody_B(best_q);
  fit.mse = best_mse;
  fit.n_bins = static_cast<int>(hist.n_bins());
  fit.max_x = hist.max_x();
  return fit;
}

}  // namespace rmtsw
