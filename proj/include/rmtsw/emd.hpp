#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace rmtsw {

inline constexpr std::size_t kEmdMinLength = 8;

/// Empirical mode decomposition of a signal: oscillatory intrinsic mode
/// functions plus a low-extrema residue. sum(imfs) + residue reconstructs
/// the input exactly (telescoping subtraction).
struct EmdResult {
  std::vector<std::vector<double>> imfs;
  std::vector<double> residue;
};

struct EmdOptions {
  double sift_threshold = 0.2;  // normalized squared difference between sifts
  int max_imfs = 10;
  int max_sifts = 64;
};

struct SignalTooShortError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

EmdResult emd_decompose(std::span<const double> signal, const EmdOptions& options = {});

}  // namespace rmtsw
