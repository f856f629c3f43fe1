#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmtsw/corpus.hpp"
#include "rmtsw/selection.hpp"

namespace rmtsw {

/// Bad configuration or unusable input location; maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Runtime failure inside a stage; maps to exit code 1.
struct PipelineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class InputFormat { auto_detect, txt_dir, jsonl };

struct PipelineConfig {
  std::string input_path;
  InputFormat input_format = InputFormat::auto_detect;
  std::uint64_t top_n = 10000;
  GapScope gap_scope = GapScope::article;
  std::uint64_t min_articles = 300;
  int n_bins = 300;
  double max_spacing = 5.0;
  double percentile = 10.0;
  int poly_degree = 7;
  bool emd_enabled = true;
  unsigned threads = 0;  // 0 selects the hardware concurrency
  std::string output_dir;
  std::string dump_histograms = "none";  // "none" | "flagged" | comma-separated words
  PercentileMethod percentile_method = PercentileMethod::linear;
  bool include_digits = false;
};

/// Overlay `key = value` lines from a config file onto cfg. Unknown keys,
/// missing '=', and unparsable values raise ConfigError naming the key and
/// line.
void apply_config_file(PipelineConfig& cfg, const std::string& path);

/// Range-check every field; raises ConfigError naming the offending key.
void validate_config(const PipelineConfig& cfg);

/// Stage 1: read the corpus, rank the vocabulary, and write series.csv plus
/// vocab.csv and corpus_meta.json into the output directory.
void run_ingest(const PipelineConfig& cfg, std::ostream& log);

/// Stage 2: read series.csv (and vocab.csv when present), run the
/// standardize/unfold/detrend/histogram/fit chain per word, and write
/// fits.csv. Per-word failures downgrade to a status column, never abort the
/// stage.
void run_fit(const PipelineConfig& cfg, std::ostream& log);

/// Stage 3: read fits.csv, threshold at the mse percentile, and write
/// stopwords.csv, stopwords.txt, report.json, and any requested per-word
/// histogram dumps.
void run_select(const PipelineConfig& cfg, std::ostream& log);

/// The three stages in order, sharing one output directory.
void run_pipeline(const PipelineConfig& cfg, std::ostream& log);

}  // namespace rmtsw
