#include "rmtsw/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "rmtsw/brody.hpp"
#include "rmtsw/csv.hpp"
#include "rmtsw/spectral.hpp"

namespace fs = std::filesystem;

namespace rmtsw {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string to_string(GapScope scope) {
  return scope == GapScope::article ? "article" : "sentence";
}

std::string to_string(InputFormat format) {
  switch (format) {
    case InputFormat::auto_detect: return "auto";
    case InputFormat::txt_dir: return "txt-dir";
    case InputFormat::jsonl: return "jsonl";
  }
  return "auto";
}

std::string to_string(PercentileMethod method) {
  return method == PercentileMethod::linear ? "linear" : "nearest-rank";
}

// Config-value parsers. `where` is "<file>:<line>: <key>" so every failure
// names its origin.
std::uint64_t config_uint(std::string_view value, const std::string& where) {
  try {
    return parse_uint(value, where);
  } catch (const CsvError& e) {
    throw ConfigError(e.what());
  }
}

double config_double(std::string_view value, const std::string& where) {
  try {
    return parse_double(value, where);
  } catch (const CsvError& e) {
    throw ConfigError(e.what());
  }
}

bool config_bool(std::string_view value, const std::string& where) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError(where + ": expected true or false, got \"" + std::string(value) + "\"");
}

GapScope config_gap_scope(std::string_view value, const std::string& where) {
  if (value == "article") return GapScope::article;
  if (value == "sentence") return GapScope::sentence;
  throw ConfigError(where + ": expected article or sentence, got \"" + std::string(value) + "\"");
}

InputFormat config_input_format(std::string_view value, const std::string& where) {
  if (value == "auto") return InputFormat::auto_detect;
  if (value == "txt-dir") return InputFormat::txt_dir;
  if (value == "jsonl") return InputFormat::jsonl;
  throw ConfigError(where + ": expected auto, txt-dir, or jsonl, got \"" + std::string(value) +
                    "\"");
}

PercentileMethod config_percentile_method(std::string_view value, const std::string& where) {
  if (value == "linear") return PercentileMethod::linear;
  if (value == "nearest-rank") return PercentileMethod::nearest_rank;
  throw ConfigError(where + ": expected linear or nearest-rank, got \"" + std::string(value) +
                    "\"");
}

struct DumpSpec {
  enum class Mode { none, flagged, list } mode = Mode::none;
  std::vector<std::string> words;
};

DumpSpec parse_dump_spec(const std::string& s) {
  DumpSpec spec;
  if (s == "none") return spec;
  if (s == "flagged") {
    spec.mode = DumpSpec::Mode::flagged;
    return spec;
  }
  spec.mode = DumpSpec::Mode::list;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string::npos ? s.size() : comma;
    const auto word = trim(std::string_view(s).substr(start, end - start));
    if (!word.empty()) spec.words.emplace_back(word);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (spec.words.empty()) {
    throw ConfigError("dump-histograms: expected none, flagged, or a comma-separated word list");
  }
  return spec;
}

// Words are plain letters in practice, but dump words can come from
// hand-edited files; keep them from escaping the output directory.
std::string safe_file_component(const std::string& word) {
  std::string out = word;
  for (char& c : out) {
    if (c == '/' || c == '\\' || c == '\0') c = '_';
  }
  if (out == "." || out == "..") out = "_";
  return out;
}

unsigned effective_threads(const PipelineConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::unique_ptr<DocumentSource> open_source(const PipelineConfig& cfg) {
  if (cfg.input_path.empty()) {
    throw ConfigError("no input path given (set input in the config file or pass --input)");
  }
  if (!fs::exists(cfg.input_path)) {
    throw ConfigError("input path does not exist: " + cfg.input_path);
  }
  TokenizerConfig tok;
  tok.include_digits = cfg.include_digits;

  InputFormat format = cfg.input_format;
  if (format == InputFormat::auto_detect) {
    format = fs::is_directory(cfg.input_path) ? InputFormat::txt_dir : InputFormat::jsonl;
  }
  try {
    if (format == InputFormat::txt_dir) return open_text_directory(cfg.input_path, tok);
    return open_jsonl_file(cfg.input_path, tok);
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
}

// Forwards every pass and tallies the documents and tokens it saw, so ingest
// gets corpus totals without a dedicated extra pass.
class CountingSource final : public DocumentSource {
 public:
  explicit CountingSource(DocumentSource& inner) : inner_(inner) {}

  void for_each(const std::function<void(const Document&)>& fn) override {
    n_documents_ = 0;
    total_tokens_ = 0;
    inner_.for_each([&](const Document& doc) {
      ++n_documents_;
      total_tokens_ += doc.length_words;
      fn(doc);
    });
  }

  std::uint64_t n_documents() const { return n_documents_; }
  std::uint64_t total_tokens() const { return total_tokens_; }

 private:
  DocumentSource& inner_;
  std::uint64_t n_documents_ = 0;
  std::uint64_t total_tokens_ = 0;
};

fs::path output_file(const PipelineConfig& cfg, const std::string& name) {
  return fs::path(cfg.output_dir) / name;
}

void require_artifact(const fs::path& path, const std::string& producer) {
  if (!fs::is_regular_file(path)) {
    throw PipelineError("missing " + path.string() + " (run the " + producer + " stage first)");
  }
}

// Per-word series with its vocabulary rank, in deterministic output order.
struct SeriesTable {
  std::vector<SpacingSeries> series;
  std::vector<std::uint64_t> ranks;
};

SeriesTable read_series_table(const PipelineConfig& cfg) {
  SeriesTable table;
  std::unordered_map<std::string, std::size_t> index;

  // vocab.csv fixes the word order and ranks when available; a bare
  // series.csv (hand-written input) falls back to first-appearance order.
  const fs::path vocab_path = output_file(cfg, "vocab.csv");
  if (fs::is_regular_file(vocab_path)) {
    CsvReader reader(vocab_path.string(), {"word", "rank", "total_count"});
    while (auto row = reader.next_row()) {
      const std::string where =
          reader.path() + ":" + std::to_string(reader.row_line()) + ": rank";
      const std::uint64_t rank = parse_uint((*row)[1], where);
      index.emplace((*row)[0], table.series.size());
      table.series.push_back({(*row)[0], {}});
      table.ranks.push_back(rank);
    }
  }

  const fs::path series_path = output_file(cfg, "series.csv");
  require_artifact(series_path, "ingest");
  CsvReader reader(series_path.string(),
                   {"word", "article_id", "avg_distance", "article_length"});
  const bool fixed_vocabulary = !table.series.empty();
  while (auto row = reader.next_row()) {
    const std::string line_no = std::to_string(reader.row_line());
    auto it = index.find((*row)[0]);
    if (it == index.end()) {
      if (fixed_vocabulary) {
        throw PipelineError(reader.path() + ":" + line_no + ": word \"" + (*row)[0] +
                            "\" is not in vocab.csv");
      }
      it = index.emplace((*row)[0], table.series.size()).first;
      table.series.push_back({(*row)[0], {}});
      table.ranks.push_back(table.series.size());
    }
    SpacingSample sample;
    sample.avg_distance =
        parse_double((*row)[2], reader.path() + ":" + line_no + ": avg_distance");
    sample.article_length =
        parse_uint((*row)[3], reader.path() + ":" + line_no + ": article_length");
    sample.article_id = (*row)[1];
    table.series[it->second].samples.push_back(std::move(sample));
  }
  if (table.series.empty()) {
    throw PipelineError(series_path.string() + ": no series rows");
  }
  return table;
}

// The per-word chain from raw samples to a fitted Brody parameter. Failures
// become a status, not an exception. When `artifacts` is given the unfolded
// series and histogram are kept for diagnostic dumps.
struct WordArtifacts {
  UnfoldedSeries unfolded;
  Histogram histogram;
  bool have_histogram = false;
};

WordFit fit_one_word(const SpacingSeries& series, std::uint64_t rank,
                     const PipelineConfig& cfg, std::string* note,
                     WordArtifacts* artifacts) {
  WordFit fit;
  fit.word = series.word;
  fit.rank = rank;
  fit.n_articles = series.samples.size();
  fit.n_spacings = fit.n_articles > 0 ? fit.n_articles - 1 : 0;

  if (fit.n_articles < cfg.min_articles) {
    fit.status = WordStatus::skipped_min_articles;
    return fit;
  }
  try {
    const StandardizedSeries standardized = weighted_standardize(series);
    UnfoldedSeries unfolded = unfold(standardized, cfg.poly_degree);
    if (cfg.emd_enabled) unfolded = detrend(unfolded);

    const Histogram hist = make_histogram(unfolded.spacings, cfg.n_bins, cfg.max_spacing);
    if (artifacts) {
      artifacts->unfolded = unfolded;
      artifacts->histogram = hist;
      artifacts->have_histogram = true;
    }

    FitOptions options;
    options.min_retained = static_cast<std::int64_t>(cfg.min_articles) - 1;
    const BrodyFit brody = fit_brody(hist, options);

    fit.status = WordStatus::ok;
    fit.beta = brody.q;
    fit.beta_clamped = brody.q_clamped();
    fit.mse = brody.mse;
  } catch (const InsufficientSamplesError&) {
    fit.status = WordStatus::insufficient_samples;
  } catch (const DegenerateSeriesError&) {
    fit.status = WordStatus::degenerate_series;
  } catch (const InsufficientRetainedError&) {
    fit.status = WordStatus::insufficient_retained;
  } catch (const NoMassError&) {
    fit.status = WordStatus::no_mass;
  } catch (const std::exception& e) {
    fit.status = WordStatus::numeric_error;
    if (note) *note = e.what();
  }
  return fit;
}

void write_fits_csv(const std::vector<WordFit>& fits, const fs::path& path) {
  CsvWriter w(path.string());
  w.write_row({"word", "rank", "n_articles", "n_spacings", "beta", "beta_clamped", "mse",
               "status"});
  for (const WordFit& f : fits) {
    const bool ok = f.status == WordStatus::ok;
    w.write_row({f.word, std::to_string(f.rank), std::to_string(f.n_articles),
                 std::to_string(f.n_spacings), ok ? format_double(f.beta) : "",
                 ok ? format_double(f.beta_clamped) : "", ok ? format_double(f.mse) : "",
                 std::string(to_string(f.status))});
  }
  w.close();
}

std::vector<WordFit> read_fits_csv(const fs::path& path) {
  CsvReader reader(path.string(), {"word", "rank", "n_articles", "n_spacings", "beta",
                                   "beta_clamped", "mse", "status"});
  std::vector<WordFit> fits;
  while (auto row = reader.next_row()) {
    const std::string at = reader.path() + ":" + std::to_string(reader.row_line());
    WordFit f;
    f.word = (*row)[0];
    f.rank = parse_uint((*row)[1], at + ": rank");
    f.n_articles = parse_uint((*row)[2], at + ": n_articles");
    f.n_spacings = parse_uint((*row)[3], at + ": n_spacings");
    try {
      f.status = word_status_from_string((*row)[7]);
    } catch (const std::invalid_argument& e) {
      throw CsvError(at + ": status: " + e.what());
    }
    if (f.status == WordStatus::ok) {
      f.beta = parse_double((*row)[4], at + ": beta");
      f.beta_clamped = parse_double((*row)[5], at + ": beta_clamped");
      f.mse = parse_double((*row)[6], at + ": mse");
    }
    fits.push_back(std::move(f));
  }
  if (fits.empty()) throw PipelineError(path.string() + ": no fit rows");
  return fits;
}

void write_histogram_csv(const Histogram& hist, double beta, const fs::path& path) {
  CsvWriter w(path.string());
  w.write_row({"bin_center", "density", "brody", "poisson", "goe"});
  for (std::size_t i = 0; i < hist.n_bins(); ++i) {
    const double center = hist.bin_center(i);
    w.write_row({format_double(center), format_double(hist.densities[i]),
                 format_double(brody_pdf(center, beta)), format_double(poisson_pdf(center)),
                 format_double(wigner_pdf(center))});
  }
  w.close();
}

nlohmann::ordered_json config_echo(const PipelineConfig& cfg) {
  nlohmann::ordered_json j;
  j["input"] = cfg.input_path;
  j["input_format"] = to_string(cfg.input_format);
  j["top_n"] = cfg.top_n;
  j["gap_scope"] = to_string(cfg.gap_scope);
  j["min_articles"] = cfg.min_articles;
  j["bins"] = cfg.n_bins;
  j["max_spacing"] = cfg.max_spacing;
  j["percentile"] = cfg.percentile;
  j["percentile_method"] = to_string(cfg.percentile_method);
  j["poly_degree"] = cfg.poly_degree;
  j["emd"] = cfg.emd_enabled;
  j["threads"] = cfg.threads;
  j["output"] = cfg.output_dir;
  j["dump_histograms"] = cfg.dump_histograms;
  j["include_digits"] = cfg.include_digits;
  return j;
}

}  // namespace

void apply_config_file(PipelineConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string_view stripped = trim(line);
    if (stripped.empty()) continue;

    const std::string at = path + ":" + std::to_string(line_no);
    const auto eq = stripped.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(at + ": expected key = value, got \"" + std::string(stripped) + "\"");
    }
    const std::string key(trim(stripped.substr(0, eq)));
    const std::string value(trim(stripped.substr(eq + 1)));
    if (key.empty()) throw ConfigError(at + ": empty key");
    const std::string where = at + ": " + key;

    if (key == "input") {
      cfg.input_path = value;
    } else if (key == "input-format") {
      cfg.input_format = config_input_format(value, where);
    } else if (key == "top-n") {
      cfg.top_n = config_uint(value, where);
    } else if (key == "gap-scope") {
      cfg.gap_scope = config_gap_scope(value, where);
    } else if (key == "min-articles") {
      cfg.min_articles = config_uint(value, where);
    } else if (key == "bins") {
      cfg.n_bins = static_cast<int>(config_uint(value, where));
    } else if (key == "max-spacing") {
      cfg.max_spacing = config_double(value, where);
    } else if (key == "percentile") {
      cfg.percentile = config_double(value, where);
    } else if (key == "percentile-method") {
      cfg.percentile_method = config_percentile_method(value, where);
    } else if (key == "poly-degree") {
      cfg.poly_degree = static_cast<int>(config_uint(value, where));
    } else if (key == "emd") {
      cfg.emd_enabled = config_bool(value, where);
    } else if (key == "threads") {
      cfg.threads = static_cast<unsigned>(config_uint(value, where));
    } else if (key == "output") {
      cfg.output_dir = value;
    } else if (key == "dump-histograms") {
      cfg.dump_histograms = value;
    } else if (key == "include-digits") {
      cfg.include_digits = config_bool(value, where);
    } else {
      throw ConfigError(at + ": unknown key \"" + key + "\"");
    }
  }
}

void validate_config(const PipelineConfig& cfg) {
  if (cfg.top_n < 1) throw ConfigError("top-n: must be at least 1");
  if (cfg.min_articles < 2) throw ConfigError("min-articles: must be at least 2");
  if (cfg.n_bins < 1) throw ConfigError("bins: must be at least 1");
  if (!(cfg.max_spacing > 0.0) || !std::isfinite(cfg.max_spacing)) {
    throw ConfigError("max-spacing: must be a positive finite number");
  }
  if (!(cfg.percentile > 0.0) || !(cfg.percentile < 100.0)) {
    throw ConfigError("percentile: must lie strictly between 0 and 100");
  }
  if (cfg.poly_degree < 3 || cfg.poly_degree > 19 || cfg.poly_degree % 2 == 0) {
    throw ConfigError("poly-degree: must be an odd integer between 3 and 19");
  }
  if (cfg.output_dir.empty()) {
    throw ConfigError("no output directory given (set output in the config file or pass --output)");
  }
  parse_dump_spec(cfg.dump_histograms);
}

void run_ingest(const PipelineConfig& cfg, std::ostream& log) {
  const std::unique_ptr<DocumentSource> source = open_source(cfg);
  CountingSource counting(*source);

  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw PipelineError("cannot create output directory " + cfg.output_dir);

  RankedVocabulary vocab;
  try {
    vocab = build_vocabulary(counting, cfg.top_n);
  } catch (const std::runtime_error& e) {
    throw PipelineError(std::string("ingest: ") + e.what());
  }
  const std::uint64_t n_documents = counting.n_documents();
  const std::uint64_t total_tokens = counting.total_tokens();

  auto series = build_series(*source, vocab, cfg.gap_scope);

  CsvWriter vocab_writer(output_file(cfg, "vocab.csv").string());
  vocab_writer.write_row({"word", "rank", "total_count"});
  for (std::size_t i = 0; i < vocab.entries.size(); ++i) {
    vocab_writer.write_row({vocab.entries[i].word, std::to_string(i + 1),
                            std::to_string(vocab.entries[i].total_count)});
  }
  vocab_writer.close();

  std::uint64_t n_samples = 0;
  CsvWriter series_writer(output_file(cfg, "series.csv").string());
  series_writer.write_row({"word", "article_id", "avg_distance", "article_length"});
  for (const VocabEntry& entry : vocab.entries) {
    const SpacingSeries& s = series.at(entry.word);
    for (const SpacingSample& sample : s.samples) {
      series_writer.write_row({s.word, sample.article_id, format_double(sample.avg_distance),
                               std::to_string(sample.article_length)});
      ++n_samples;
    }
  }
  series_writer.close();

  nlohmann::ordered_json meta;
  meta["n_documents"] = n_documents;
  meta["total_tokens"] = total_tokens;
  std::ofstream meta_file(output_file(cfg, "corpus_meta.json"), std::ios::binary);
  meta_file << meta.dump(2) << '\n';
  if (!meta_file.flush()) throw PipelineError("write failed for corpus_meta.json");

  log << "ingest: " << n_documents << " documents, " << total_tokens << " tokens, "
      << vocab.entries.size() << " vocabulary words, " << n_samples << " series samples\n";
}

void run_fit(const PipelineConfig& cfg, std::ostream& log) {
  const SeriesTable table = read_series_table(cfg);
  const std::size_t n_words = table.series.size();

  std::vector<WordFit> fits(n_words);
  std::vector<std::string> notes(n_words);

  const unsigned n_threads = static_cast<unsigned>(
      std::min<std::size_t>(effective_threads(cfg), n_words));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < n_words; ++i) {
      fits[i] = fit_one_word(table.series[i], table.ranks[i], cfg, &notes[i], nullptr);
    }
  } else {
    // Workers race only on the index counter; each result slot has a single
    // writer, so the merged output is identical to the sequential order.
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n_words; i = next.fetch_add(1)) {
          fits[i] = fit_one_word(table.series[i], table.ranks[i], cfg, &notes[i], nullptr);
        }
      });
    }
    for (std::thread& w : workers) w.join();
  }

  std::uint64_t n_ok = 0;
  for (std::size_t i = 0; i < n_words; ++i) {
    if (fits[i].status == WordStatus::ok) ++n_ok;
    if (!notes[i].empty()) {
      log << "warning: word \"" << fits[i].word << "\": " << notes[i] << '\n';
    }
  }
  write_fits_csv(fits, output_file(cfg, "fits.csv"));

  log << "fit: " << n_ok << " fitted, " << (n_words - n_ok) << " skipped of " << n_words
      << " words (threads=" << n_threads << ")\n";
}

void run_select(const PipelineConfig& cfg, std::ostream& log) {
  const fs::path fits_path = output_file(cfg, "fits.csv");
  require_artifact(fits_path, "fit");
  const std::vector<WordFit> fits = read_fits_csv(fits_path);

  StopwordReport report;
  try {
    report = select_stopwords(fits, cfg.percentile, cfg.percentile_method);
  } catch (const std::invalid_argument& e) {
    throw PipelineError(std::string("select: ") + e.what());
  }

  write_stopwords_csv(report, output_file(cfg, "stopwords.csv").string());
  write_stopwords_txt(report, output_file(cfg, "stopwords.txt").string());

  nlohmann::ordered_json j;
  j["config"] = config_echo(cfg);
  j["corpus"] = nullptr;
  {
    std::ifstream meta_file(output_file(cfg, "corpus_meta.json"));
    if (meta_file) {
      try {
        j["corpus"] = nlohmann::ordered_json::parse(meta_file);
      } catch (const nlohmann::json::parse_error&) {
        // leave null; metadata is informational
      }
    }
  }
  j["threshold"] = report.threshold;
  j["percentile"] = report.percentile;
  j["n_words"] = report.rows.size();
  j["n_fitted"] = report.n_fitted;
  j["n_flagged"] = report.n_flagged;
  auto words = nlohmann::ordered_json::array();
  for (const ReportRow& r : report.rows) {
    nlohmann::ordered_json row;
    row["word"] = r.word;
    row["rank"] = r.rank;
    row["n_articles"] = r.n_articles;
    row["n_spacings"] = r.n_spacings;
    row["status"] = std::string(to_string(r.status));
    if (r.fitted()) {
      row["beta"] = r.beta;
      row["beta_clamped"] = r.beta_clamped;
      row["mse"] = r.mse;
    } else {
      row["beta"] = nullptr;
      row["beta_clamped"] = nullptr;
      row["mse"] = nullptr;
    }
    row["is_stopword"] = r.is_stopword;
    words.push_back(std::move(row));
  }
  j["words"] = std::move(words);

  std::ofstream report_file(output_file(cfg, "report.json"), std::ios::binary);
  if (!report_file) throw PipelineError("cannot open report.json for writing");
  report_file << j.dump(2) << '\n';
  if (!report_file.flush()) throw PipelineError("write failed for report.json");

  // Diagnostic dumps re-run the deterministic chain for the chosen words and
  // evaluate the Brody curve at the reported beta.
  const DumpSpec dump = parse_dump_spec(cfg.dump_histograms);
  std::uint64_t n_dumped = 0;
  if (dump.mode != DumpSpec::Mode::none) {
    std::vector<std::string> wanted;
    if (dump.mode == DumpSpec::Mode::flagged) {
      for (const ReportRow& r : report.rows) {
        if (r.is_stopword) wanted.push_back(r.word);
      }
    } else {
      wanted = dump.words;
    }

    if (!wanted.empty()) {
      const SeriesTable table = read_series_table(cfg);
      std::unordered_map<std::string, std::size_t> index;
      for (std::size_t i = 0; i < table.series.size(); ++i) {
        index.emplace(table.series[i].word, i);
      }
      std::unordered_map<std::string, const WordFit*> fit_index;
      for (const WordFit& f : fits) fit_index.emplace(f.word, &f);

      for (const std::string& word : wanted) {
        const auto series_it = index.find(word);
        if (series_it == index.end()) {
          log << "warning: dump: word \"" << word << "\" has no series\n";
          continue;
        }
        WordArtifacts artifacts;
        const WordFit refit = fit_one_word(table.series[series_it->second], 0, cfg, nullptr,
                                           &artifacts);
        if (!artifacts.have_histogram) {
          log << "warning: dump: word \"" << word << "\" skipped ("
              << to_string(refit.status) << ")\n";
          continue;
        }
        const std::string stem = safe_file_component(word);
        write_unfolded_csv(artifacts.unfolded,
                           output_file(cfg, "unfolded_" + stem + ".csv").string());
        const auto fit_it = fit_index.find(word);
        if (fit_it != fit_index.end() && fit_it->second->status == WordStatus::ok) {
          write_histogram_csv(artifacts.histogram, fit_it->second->beta,
                              output_file(cfg, "hist_" + stem + ".csv").string());
          ++n_dumped;
        } else {
          log << "warning: dump: word \"" << word
              << "\" has no fitted beta, histogram dump skipped\n";
        }
      }
    }
  }

  log << "select: threshold " << format_double(report.threshold) << " at percentile "
      << format_double(report.percentile) << ", flagged " << report.n_flagged << " of "
      << report.n_fitted << " fitted words (" << report.rows.size() << " total)";
  if (dump.mode != DumpSpec::Mode::none) log << ", dumped " << n_dumped << " histograms";
  log << '\n';
}

void run_pipeline(const PipelineConfig& cfg, std::ostream& log) {
  run_ingest(cfg, log);
  run_fit(cfg, log);
  run_select(cfg, log);
}

}  // namespace rmtsw
