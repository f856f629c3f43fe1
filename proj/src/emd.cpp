#include "rmtsw/emd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace rmtsw {
namespace {

struct Extrema {
  std::vector<std::size_t> maxima;
  std::vector<std::size_t> minima;
  std::size_t zero_crossings = 0;
};

// Local extrema with plateau handling (a flat run counts once, at its first
// sample). Endpoints are never extrema.
Extrema find_extrema(std::span<const double> x) {
  Extrema ex;
  const std::size_t n = x.size();
  int last_sign = 0;
  std::size_t candidate = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (x[i + 1] == x[i]) continue;
    const int sign = x[i + 1] > x[i] ? 1 : -1;
    if (last_sign == 1 && sign == -1) ex.maxima.push_back(candidate);
    if (last_sign == -1 && sign == 1) ex.minima.push_back(candidate);
    last_sign = sign;
    candidate = i + 1;
  }

  int prev = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    const int s = x[i] > 0.0 ? 1 : -1;
    if (prev != 0 && s != prev) ++ex.zero_crossings;
    prev = s;
  }
  return ex;
}

// Natural cubic spline through strictly increasing knots, evaluated at the
// integer grid 0..n-1. Two knots degrade to a line.
std::vector<double> spline_on_grid(const std::vector<double>& kx,
                                   const std::vector<double>& ky, std::size_t n) {
  const std::size_t m = kx.size();
  std::vector<double> out(n);
  if (m == 2) {
    const double slope = (ky[1] - ky[0]) / (kx[1] - kx[0]);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = ky[0] + slope * (static_cast<double>(i) - kx[0]);
    }
    return out;
  }

  // Second derivatives from the tridiagonal system (Thomas algorithm),
  // natural end conditions y'' = 0.
  std::vector<double> h(m - 1), diag(m), rhs(m), ypp(m);
  for (std::size_t i = 0; i + 1 < m; ++i) h[i] = kx[i + 1] - kx[i];
  diag[0] = diag[m - 1] = 1.0;
  rhs[0] = rhs[m - 1] = 0.0;
  std::vector<double> sub(m, 0.0), sup(m, 0.0);
  for (std::size_t i = 1; i + 1 < m; ++i) {
    sub[i] = h[i - 1];
    diag[i] = 2.0 * (h[i - 1] + h[i]);
    sup[i] = h[i];
    rhs[i] = 6.0 * ((ky[i + 1] - ky[i]) / h[i] - (ky[i] - ky[i - 1]) / h[i - 1]);
  }
  for (std::size_t i = 1; i < m; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  ypp[m - 1] = rhs[m - 1] / diag[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) {
    ypp[i] = (rhs[i] - sup[i] * ypp[i + 1]) / diag[i];
  }

  std::size_t seg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i);
    while (seg + 2 < m && t > kx[seg + 1]) ++seg;
    const double dx = h[seg];
    const double a = (kx[seg + 1] - t) / dx;
    const double b = (t - kx[seg]) / dx;
    out[i] = a * ky[seg] + b * ky[seg + 1] +
             ((a * a * a - a) * ypp[seg] + (b * b * b - b) * ypp[seg + 1]) *
                 (dx * dx) / 6.0;
  }
  return out;
}

// Envelope knots: extrema plus up to two mirror images past each end, so the
// spline does not swing wildly at the boundaries.
void mirrored_knots(std::span<const double> x, const std::vector<std::size_t>& idx,
                    std::vector<double>& kx, std::vector<double>& ky) {
  const auto n = static_cast<double>(x.size());
  kx.clear();
  ky.clear();
  const std::size_t n_mirror = std::min<std::size_t>(2, idx.size());
  for (std::size_t k = n_mirror; k-- > 0;) {
    const double xi = static_cast<double>(idx[k]);
    if (xi > 0.0) {
      kx.push_back(-xi);
      ky.push_back(x[idx[k]]);
    }
  }
  std::reverse(kx.begin(), kx.end());
  std::reverse(ky.begin(), ky.end());
  for (std::size_t i : idx) {
    kx.push_back(static_cast<double>(i));
    ky.push_back(x[i]);
  }
  for (std::size_t k = idx.size() - n_mirror; k < idx.size(); ++k) {
    const double xi = static_cast<double>(idx[k]);
    if (xi < n - 1.0) {
      kx.push_back(2.0 * (n - 1.0) - xi);
      ky.push_back(x[idx[k]]);
    }
  }
}

// Mean of upper and lower cubic-spline envelopes; empty when the signal has
// too few extrema to build them.
std::vector<double> envelope_mean(std::span<const double> x, const Extrema& ex) {
  if (ex.maxima.empty() || ex.minima.empty() ||
      ex.maxima.size() + ex.minima.size() < 3) {
    return {};
  }
  std::vector<double> kx, ky;
  mirrored_knots(x, ex.maxima, kx, ky);
  if (kx.size() < 2) return {};
  std::vector<double> upper = spline_on_grid(kx, ky, x.size());
  mirrored_knots(x, ex.minima, kx, ky);
  if (kx.size() < 2) return {};
  std::vector<double> lower = spline_on_grid(kx, ky, x.size());
  std::vector<double> mean(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mean[i] = 0.5 * (upper[i] + lower[i]);
  return mean;
}

bool imf_shape_ok(std::span<const double> h) {
  const Extrema ex = find_extrema(h);
  const auto n_ext = ex.maxima.size() + ex.minima.size();
  const auto diff = n_ext > ex.zero_crossings ? n_ext - ex.zero_crossings
                                              : ex.zero_crossings - n_ext;
  return diff <= 1;
}

// One candidate IMF via repeated sifting. Empty result: no envelope could be
// built, the remainder belongs in the residue.
std::vector<double> extract_imf(std::span<const double> signal, const EmdOptions& opt) {
  std::vector<double> h(signal.begin(), signal.end());
  for (int sift = 0; sift < opt.max_sifts; ++sift) {
    const Extrema ex = find_extrema(h);
    std::vector<double> mean = envelope_mean(h, ex);
    if (mean.empty()) {
      return sift == 0 ? std::vector<double>{} : h;
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      num += mean[i] * mean[i];  // (h - h_new) == mean
      den += h[i] * h[i];
      h[i] -= mean[i];
    }
    const double sd = den > 0.0 ? num / den : 0.0;
    if (sd < opt.sift_threshold && imf_shape_ok(h)) break;
  }
  return h;
}

}  // namespace

EmdResult emd_decompose(std::span<const double> signal, const EmdOptions& options) {
  if (signal.size() < kEmdMinLength) {
    throw SignalTooShortError("emd_decompose: signal too short");
  }

  EmdResult result;
  std::vector<double> residual(signal.begin(), signal.end());
  while (static_cast<int>(result.imfs.size()) < options.max_imfs) {
    const Extrema ex = find_extrema(residual);
    if (ex.maxima.size() + ex.minima.size() < 3) break;
    std::vector<double> imf = extract_imf(residual, options);
    if (imf.empty()) break;
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= imf[i];
    result.imfs.push_back(std::move(imf));
  }
  result.residue = std::move(residual);
  return result;
}

}  // namespace rmtsw
