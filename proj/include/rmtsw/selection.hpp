#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace rmtsw {

/// Outcome of one word's trip through the fitting chain. Anything other than
/// ok means the word is reported without fit values and never flagged.
enum class WordStatus {
  ok,
  skipped_min_articles,
  insufficient_samples,
  degenerate_series,
  insufficient_retained,
  no_mass,
  numeric_error,
};

std::string_view to_string(WordStatus status);
WordStatus word_status_from_string(std::string_view s);

/// Per-word fit summary as produced by the fit stage.
struct WordFit {
  std::string word;
  std::uint64_t rank = 0;        // 1-based vocabulary rank
  std::uint64_t n_articles = 0;  // articles contributing a spacing sample
  std::uint64_t n_spacings = 0;  // nearest-neighbor spacings, n_articles - 1
  WordStatus status = WordStatus::numeric_error;
  double beta = std::numeric_limits<double>::quiet_NaN();
  double beta_clamped = std::numeric_limits<double>::quiet_NaN();
  double mse = std::numeric_limits<double>::quiet_NaN();
};

enum class PercentileMethod { linear, nearest_rank };

/// Percentile of the values at p in (0, 100). The linear method interpolates
/// between order statistics at fractional index h = (n-1)p/100; nearest_rank
/// returns the ceil(p*n/100)-th smallest value. Throws on fewer than 2
/// values.
double percentile_threshold(std::vector<double> values, double p,
                            PercentileMethod method = PercentileMethod::linear);

struct ReportRow {
  std::string word;
  std::uint64_t rank = 0;
  std::uint64_t n_articles = 0;
  std::uint64_t n_spacings = 0;
  WordStatus status = WordStatus::numeric_error;
  double beta = std::numeric_limits<double>::quiet_NaN();
  double beta_clamped = std::numeric_limits<double>::quiet_NaN();
  double mse = std::numeric_limits<double>::quiet_NaN();
  bool is_stopword = false;

  bool fitted() const { return status == WordStatus::ok; }
};

struct StopwordReport {
  std::vector<ReportRow> rows;
  double threshold = 0.0;
  double percentile = 0.0;
  std::uint64_t n_fitted = 0;
  std::uint64_t n_flagged = 0;
};

/// Threshold the fitted words at the given mse percentile. A word is flagged
/// iff its mse is strictly below the threshold. Fitted rows come first,
/// ordered by (mse, word); unfitted rows follow, ordered by word.
StopwordReport select_stopwords(const std::vector<WordFit>& fits, double p,
                                PercentileMethod method = PercentileMethod::linear);

/// Full report: `word,rank,n_articles,n_spacings,beta,mse,is_stopword`, one
/// row per vocabulary word, fit fields empty for unfitted words.
void write_stopwords_csv(const StopwordReport& report, const std::string& path);

/// Flagged words only, one per line, mse-ascending.
void write_stopwords_txt(const StopwordReport& report, const std::string& path);

}  // namespace rmtsw
