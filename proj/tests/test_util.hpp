#pragma once

// Shared helpers for the test binaries: a portable deterministic RNG,
// inverse-CDF samplers, quadrature, and small statistics utilities. The RNG
// is hand-rolled because the standard distributions are not required to be
// bit-identical across standard library implementations, and several checks
// pin exact expected values under a fixed seed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testutil {

struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in the open interval (0,1).
  double uniform() { return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52; }

  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

inline std::vector<double> exponential_samples(std::size_t n, SplitMix64& rng) {
  std::vector<double> out(n);
  for (double& v : out) v = -std::log1p(-rng.uniform());
  return out;
}

// Recursive adaptive Simpson quadrature.
inline double adaptive_simpson_step(const std::function<double(double)>& f, double a, double b,
                                    double fa, double fm, double fb, double whole, double eps,
                                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-10) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_step(f, a, b, fa, fm, fb, whole, eps, 40);
}

// Integrate across explicit knots. Adaptive quadrature on one wide interval
// can miss a narrow bump entirely when the initial sample points all land in
// flat regions, so callers list knots that straddle the interesting part.
inline double integrate_piecewise(const std::function<double(double)>& f,
                                  const std::vector<double>& knots, double eps = 1e-10) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    total += integrate(f, knots[i], knots[i + 1], eps);
  }
  return total;
}

// Kolmogorov-Smirnov distance between a sample and a continuous CDF.
inline double ks_distance(std::vector<double> samples,
                          const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double c = cdf(samples[i]);
    d = std::max(d, std::abs(c - static_cast<double>(i) / n));
    d = std::max(d, std::abs(c - static_cast<double>(i + 1) / n));
  }
  return d;
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double variance_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size());
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  double num = 0.0, da = 0.0, db = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - ma) * (b[i] - mb);
    da += (a[i] - ma) * (a[i] - ma);
    db += (b[i] - mb) * (b[i] - mb);
  }
  return num / std::sqrt(da * db);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Plain comma split; good enough for outputs known to contain no quoting.
inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

// Unique scratch directory removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("rmtsw_test_" + tag + "_" + std::to_string(++counter) + "_" +
             std::to_string(static_cast<std::uint64_t>(
                 std::chrono::steady_clock::now().time_since_epoch().count())));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testutil
