#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rmtsw/corpus.hpp"
#include "rmtsw/emd.hpp"

namespace rmtsw {

/// Per-article average spacings of one word after length-weighted
/// standardization: weighted mean 0, weighted variance 1.
struct StandardizedSeries {
  std::string word;
  std::vector<double> values;
};

/// Sorted unfolded values and their nearest-neighbor spacings. Spacings are
/// rescaled to mean exactly 1.
struct UnfoldedSeries {
  std::string word;
  std::vector<double> unfolded;
  std::vector<double> spacings;
  bool detrend_skipped = false;
};

struct DegenerateSeriesError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InsufficientSamplesError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Standardize a spacing series with article lengths as weights. Throws
/// InsufficientSamplesError below 2 samples and DegenerateSeriesError when
/// the weighted variance vanishes.
StandardizedSeries weighted_standardize(const SpacingSeries& series);

/// Unfold a standardized series: sort, fit a least-squares polynomial of odd
/// degree `poly_degree` to the empirical staircase, map values through the
/// smooth fit, sort again, and take consecutive differences rescaled to unit
/// mean.
UnfoldedSeries unfold(const StandardizedSeries& series, int poly_degree = 7);

/// Remove the secular trend of the unfolded values: EMD-decompose the
/// fluctuation around the ideal staircase and subtract the residue. Series
/// too short for the decomposition are passed through with detrend_skipped
/// set.
UnfoldedSeries detrend(const UnfoldedSeries& series, const EmdOptions& emd_options = {});

/// Debug dump: one row per unfolded value, `index,value,spacing`.
void write_unfolded_csv(const UnfoldedSeries& series, const std::string& path);

}  // namespace rmtsw
