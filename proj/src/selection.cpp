#include "rmtsw/selection.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "rmtsw/csv.hpp"

namespace rmtsw {

std::string_view to_string(WordStatus status) {
  switch (status) {
    case WordStatus::ok: return "ok";
    case WordStatus::skipped_min_articles: return "skipped_min_articles";
    case WordStatus::insufficient_samples: return "insufficient_samples";
    case WordStatus::degenerate_series: return "degenerate_series";
    case WordStatus::insufficient_retained: return "insufficient_retained";
    case WordStatus::no_mass: return "no_mass";
    case WordStatus::numeric_error: return "numeric_error";
  }
  return "numeric_error";
}

WordStatus word_status_from_string(std::string_view s) {
  for (WordStatus st : {WordStatus::ok, WordStatus::skipped_min_articles,
                        WordStatus::insufficient_samples, WordStatus::degenerate_series,
                        WordStatus::insufficient_retained, WordStatus::no_mass,
                        WordStatus::numeric_error}) {
    if (to_string(st) == s) return st;
  }
  throw std::invalid_argument("unknown word status: \"" + std::string(s) + "\"");
}

double percentile_threshold(std::vector<double> values, double p, PercentileMethod method) {
  if (values.size() < 2) {
    throw std::invalid_argument("percentile needs at least 2 values, got " +
                                std::to_string(values.size()));
  }
  if (!(p > 0.0) || !(p < 100.0)) {
    throw std::invalid_argument("percentile must lie in (0, 100), got " + format_double(p));
  }
  std::sort(values.begin(), values.end());

  if (method == PercentileMethod::nearest_rank) {
    const auto n = static_cast<double>(values.size());
    auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
    if (rank < 1) rank = 1;
    return values[rank - 1];
  }

  const double h = (static_cast<double>(values.size()) - 1.0) * p / 100.0;
  const auto lo = static_cast<std::size_t>(h);
  const double frac = h - static_cast<double>(lo);
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

StopwordReport select_stopwords(const std::vector<WordFit>& fits, double p,
                                PercentileMethod method) {
  if (fits.empty()) throw std::invalid_argument("no fits to select from");

  std::vector<double> mses;
  for (const WordFit& f : fits) {
    if (f.status == WordStatus::ok) mses.push_back(f.mse);
  }

  StopwordReport report;
  report.percentile = p;
  report.threshold = percentile_threshold(std::move(mses), p, method);

  report.rows.reserve(fits.size());
  for (const WordFit& f : fits) {
    ReportRow row;
    row.word = f.word;
    row.rank = f.rank;
    row.n_articles = f.n_articles;
    row.n_spacings = f.n_spacings;
    row.status = f.status;
    row.beta = f.beta;
    row.beta_clamped = f.beta_clamped;
    row.mse = f.mse;
    row.is_stopword = f.status == WordStatus::ok && f.mse < report.threshold;
    if (f.status == WordStatus::ok) ++report.n_fitted;
    if (row.is_stopword) ++report.n_flagged;
    report.rows.push_back(std::move(row));
  }

  std::sort(report.rows.begin(), report.rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.fitted() != b.fitted()) return a.fitted();
    if (a.fitted()) {
      if (a.mse != b.mse) return a.mse < b.mse;
    }
    return a.word < b.word;
  });
  return report;
}

void write_stopwords_csv(const StopwordReport& report, const std::string& path) {
  CsvWriter w(path);
  w.write_row({"word", "rank", "n_articles", "n_spacings", "beta", "mse", "is_stopword"});
  for (const ReportRow& r : report.rows) {
    w.write_row({r.word, std::to_string(r.rank), std::to_string(r.n_articles),
                 std::to_string(r.n_spacings), r.fitted() ? format_double(r.beta) : "",
                 r.fitted() ? format_double(r.mse) : "", r.is_stopword ? "true" : "false"});
  }
  w.close();
}

void write_stopwords_txt(const StopwordReport& report, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  for (const ReportRow& r : report.rows) {
    if (r.is_stopword) f << r.word << '\n';
  }
  if (!f.flush()) throw std::runtime_error("write failed for " + path);
}

}  // namespace rmtsw
