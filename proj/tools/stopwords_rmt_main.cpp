#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "rmtsw/pipeline.hpp"

namespace {

// Every config-file key has a CLI twin; flags given on the command line win
// over the file, which wins over built-in defaults.
struct Flags {
  std::string config_path;
  std::optional<std::string> input;
  std::optional<rmtsw::InputFormat> input_format;
  std::optional<std::uint64_t> top_n;
  std::optional<rmtsw::GapScope> gap_scope;
  std::optional<std::uint64_t> min_articles;
  std::optional<int> bins;
  std::optional<double> max_spacing;
  std::optional<double> percentile;
  std::optional<rmtsw::PercentileMethod> percentile_method;
  std::optional<int> poly_degree;
  std::optional<unsigned> threads;
  std::optional<std::string> output;
  std::optional<std::string> dump_histograms;
  bool no_emd = false;
  bool emd = false;
  bool include_digits = false;
};

void add_common_options(CLI::App* cmd, Flags& f) {
  static const std::map<std::string, rmtsw::GapScope> scopes{
      {"article", rmtsw::GapScope::article}, {"sentence", rmtsw::GapScope::sentence}};
  static const std::map<std::string, rmtsw::InputFormat> formats{
      {"auto", rmtsw::InputFormat::auto_detect},
      {"txt-dir", rmtsw::InputFormat::txt_dir},
      {"jsonl", rmtsw::InputFormat::jsonl}};
  static const std::map<std::string, rmtsw::PercentileMethod> methods{
      {"linear", rmtsw::PercentileMethod::linear},
      {"nearest-rank", rmtsw::PercentileMethod::nearest_rank}};

  cmd->add_option("--config", f.config_path, "Config file with key = value lines");
  cmd->add_option("--input", f.input, "Corpus: directory of .txt files or a JSONL file");
  cmd->add_option("--input-format", f.input_format, "Input layout (default: auto)")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  cmd->add_option("--top-n", f.top_n, "Vocabulary size cutoff (default 10000)");
  cmd->add_option("--gap-scope", f.gap_scope,
                  "Whether word gaps may cross sentence boundaries (default article)")
      ->transform(CLI::CheckedTransformer(scopes, CLI::ignore_case));
  cmd->add_option("--min-articles", f.min_articles,
                  "Minimum articles per word for fitting (default 300)");
  cmd->add_option("--bins", f.bins, "Histogram bins (default 300)");
  cmd->add_option("--max-spacing", f.max_spacing, "Histogram upper edge (default 5)");
  cmd->add_option("--percentile", f.percentile, "mse percentile threshold (default 10)");
  cmd->add_option("--percentile-method", f.percentile_method,
                  "Percentile estimator (default linear)")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  cmd->add_option("--poly-degree", f.poly_degree,
                  "Unfolding polynomial degree, odd, 3-19 (default 7)");
  auto* no_emd = cmd->add_flag("--no-emd", f.no_emd, "Skip the detrending step");
  cmd->add_flag("--emd", f.emd, "Force detrending on (overrides the config file)")
      ->excludes(no_emd);
  cmd->add_flag("--include-digits", f.include_digits, "Treat 0-9 as token characters");
  cmd->add_option("--threads", f.threads, "Fit worker threads, 0 = all cores (default 0)");
  cmd->add_option("--output", f.output, "Output directory for all artifacts");
  cmd->add_option("--dump-histograms", f.dump_histograms,
                  "Per-word diagnostics: flagged, none, or word,word,... (default none)");
}

rmtsw::PipelineConfig build_config(const Flags& f) {
  rmtsw::PipelineConfig cfg;
  if (!f.config_path.empty()) rmtsw::apply_config_file(cfg, f.config_path);

  if (f.input) cfg.input_path = *f.input;
  if (f.input_format) cfg.input_format = *f.input_format;
  if (f.top_n) cfg.top_n = *f.top_n;
  if (f.gap_scope) cfg.gap_scope = *f.gap_scope;
  if (f.min_articles) cfg.min_articles = *f.min_articles;
  if (f.bins) cfg.n_bins = *f.bins;
  if (f.max_spacing) cfg.max_spacing = *f.max_spacing;
  if (f.percentile) cfg.percentile = *f.percentile;
  if (f.percentile_method) cfg.percentile_method = *f.percentile_method;
  if (f.poly_degree) cfg.poly_degree = *f.poly_degree;
  if (f.no_emd) cfg.emd_enabled = false;
  if (f.emd) cfg.emd_enabled = true;
  if (f.include_digits) cfg.include_digits = true;
  if (f.threads) cfg.threads = *f.threads;
  if (f.output) cfg.output_dir = *f.output;
  if (f.dump_histograms) cfg.dump_histograms = *f.dump_histograms;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identify corpus-customized stop words from word-spacing statistics"};
  app.require_subcommand(1);

  Flags flags;
  auto* pipeline_cmd =
      app.add_subcommand("pipeline", "Run ingest, fit, and select back to back");
  auto* ingest_cmd =
      app.add_subcommand("ingest", "Tokenize the corpus and write per-word spacing series");
  auto* fit_cmd = app.add_subcommand("fit", "Fit every word's spacing histogram");
  auto* select_cmd =
      app.add_subcommand("select", "Threshold the fits and write the stop-word report");
  for (CLI::App* cmd : {pipeline_cmd, ingest_cmd, fit_cmd, select_cmd}) {
    add_common_options(cmd, flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const rmtsw::PipelineConfig cfg = build_config(flags);
    rmtsw::validate_config(cfg);
    if (pipeline_cmd->parsed()) {
      rmtsw::run_pipeline(cfg, std::cout);
    } else if (ingest_cmd->parsed()) {
      rmtsw::run_ingest(cfg, std::cout);
    } else if (fit_cmd->parsed()) {
      rmtsw::run_fit(cfg, std::cout);
    } else {
      rmtsw::run_select(cfg, std::cout);
    }
  } catch (const rmtsw::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
