#include "rmtsw/corpus.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace fs = std::filesystem;

namespace rmtsw {

namespace {

class TextDirectorySource final : public DocumentSource {
 public:
  TextDirectorySource(std::string dir, TokenizerConfig config)
      : dir_(std::move(dir)), config_(std::move(config)) {
    if (!fs::is_directory(dir_)) {
      throw std::runtime_error("not a directory: " + dir_);
    }
    for (const auto& entry : fs::directory_iterator(dir_)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        files_.push_back(entry.path());
      }
    }
    std::sort(files_.begin(), files_.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    if (files_.empty()) {
      throw std::runtime_error("no .txt files in directory: " + dir_);
    }
  }

  void for_each(const std::function<void(const Document&)>& fn) override {
    for (const fs::path& p : files_) {
      std::ifstream f(p, std::ios::binary);
      if (!f) throw std::runtime_error("cannot read " + p.string());
      std::ostringstream buf;
      buf << f.rdbuf();
      Document doc = tokenize(buf.str(), config_);
      doc.article_id = p.stem().string();
      fn(doc);
    }
  }

 private:
  std::string dir_;
  TokenizerConfig config_;
  std::vector<fs::path> files_;
};

class JsonlSource final : public DocumentSource {
 public:
  JsonlSource(std::string path, TokenizerConfig config)
      : path_(std::move(path)), config_(std::move(config)) {
    if (!fs::is_regular_file(path_)) {
      throw std::runtime_error("no such file: " + path_);
    }
  }

  void for_each(const std::function<void(const Document&)>& fn) override {
    std::ifstream f(path_, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path_);

    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(f, line)) {
      ++line_no;
      if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;

      nlohmann::json obj;
      try {
        obj = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path_ + ":" + std::to_string(line_no) +
                                 ": invalid JSON: " + e.what());
      }
      if (!obj.is_object() || !obj.contains("id") || !obj.contains("text") ||
          !obj["id"].is_string() || !obj["text"].is_string()) {
        throw std::runtime_error(path_ + ":" + std::to_string(line_no) +
                                 ": expected an object with string fields \"id\" and \"text\"");
      }
      std::string id = obj["id"].get<std::string>();
      if (!seen_ids.insert(id).second) {
        throw std::runtime_error(path_ + ":" + std::to_string(line_no) +
                                 ": duplicate article id \"" + id + "\"");
      }
      Document doc = tokenize(obj["text"].get<std::string>(), config_);
      doc.article_id = std::move(id);
      fn(doc);
    }
  }

 private:
  std::string path_;
  TokenizerConfig config_;
};

class MemorySource final : public DocumentSource {
 public:
  explicit MemorySource(std::vector<Document> docs) : docs_(std::move(docs)) {}

  void for_each(const std::function<void(const Document&)>& fn) override {
    for (const Document& d : docs_) fn(d);
  }

 private:
  std::vector<Document> docs_;
};

}  // namespace

std::unique_ptr<DocumentSource> open_text_directory(const std::string& dir,
                                                    TokenizerConfig config) {
  return std::make_unique<TextDirectorySource>(dir, std::move(config));
}

std::unique_ptr<DocumentSource> open_jsonl_file(const std::string& path,
                                                TokenizerConfig config) {
  return std::make_unique<JsonlSource>(path, std::move(config));
}

std::unique_ptr<DocumentSource> make_memory_source(std::vector<Document> docs) {
  return std::make_unique<MemorySource>(std::move(docs));
}

RankedVocabulary build_vocabulary(DocumentSource& corpus, std::size_t top_n) {
  if (top_n == 0) throw std::invalid_argument("top_n must be at least 1");

  std::unordered_map<std::string, std::uint64_t> counts;
  std::size_t n_docs = 0;
  corpus.for_each([&](const Document& doc) {
    ++n_docs;
    for (const auto& sentence : doc.sentences) {
      for (const auto& token : sentence) ++counts[token];
    }
  });
  if (n_docs == 0 || counts.empty()) throw std::runtime_error("empty corpus");

  RankedVocabulary vocab;
  vocab.entries.reserve(counts.size());
  for (auto& [word, count] : counts) {
    vocab.entries.push_back({word, count});
  }
  std::sort(vocab.entries.begin(), vocab.entries.end(),
            [](const VocabEntry& a, const VocabEntry& b) {
              if (a.total_count != b.total_count) return a.total_count > b.total_count;
              return a.word < b.word;
            });
  if (vocab.entries.size() > top_n) vocab.entries.resize(top_n);
  return vocab;
}

std::vector<std::uint64_t> article_gaps(const Document& doc, const std::string& word,
                                        GapScope scope) {
  std::vector<std::uint64_t> gaps;
  std::uint64_t pos = 0;
  std::int64_t last_pos = -1;
  std::size_t last_sentence = 0;

  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    for (const std::string& token : doc.sentences[s]) {
      if (token == word) {
        if (last_pos >= 0 && (scope == GapScope::article || last_sentence == s)) {
          gaps.push_back(pos - static_cast<std::uint64_t>(last_pos));
        }
        last_pos = static_cast<std::int64_t>(pos);
        last_sentence = s;
      }
      ++pos;
    }
  }
  return gaps;
}

std::unordered_map<std::string, SpacingSeries> build_series(DocumentSource& corpus,
                                                            const RankedVocabulary& vocab,
                                                            GapScope scope) {
  if (vocab.entries.empty()) throw std::invalid_argument("vocabulary is empty");

  const std::size_t n_words = vocab.entries.size();
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(n_words);
  for (std::size_t i = 0; i < n_words; ++i) index.emplace(vocab.entries[i].word, i);

  // Per-word accumulators, reset between documents via the touched list so a
  // large vocabulary costs nothing for articles that use a fraction of it.
  std::vector<std::int64_t> last_pos(n_words, -1);
  std::vector<std::size_t> last_sentence(n_words, 0);
  std::vector<std::uint64_t> gap_sum(n_words, 0);
  std::vector<std::uint64_t> gap_count(n_words, 0);
  std::vector<std::size_t> touched;

  std::vector<SpacingSeries> series(n_words);
  for (std::size_t i = 0; i < n_words; ++i) series[i].word = vocab.entries[i].word;

  corpus.for_each([&](const Document& doc) {
    std::uint64_t pos = 0;
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      for (const std::string& token : doc.sentences[s]) {
        auto it = index.find(token);
        if (it != index.end()) {
          const std::size_t w = it->second;
          if (last_pos[w] >= 0) {
            if (scope == GapScope::article || last_sentence[w] == s) {
              gap_sum[w] += pos - static_cast<std::uint64_t>(last_pos[w]);
              ++gap_count[w];
            }
          } else {
            touched.push_back(w);
          }
          last_pos[w] = static_cast<std::int64_t>(pos);
          last_sentence[w] = s;
        }
        ++pos;
      }
    }
    for (const std::size_t w : touched) {
      if (gap_count[w] > 0) {
        series[w].samples.push_back({static_cast<double>(gap_sum[w]) /
                                         static_cast<double>(gap_count[w]),
                                     doc.length_words, doc.article_id});
      }
      last_pos[w] = -1;
      last_sentence[w] = 0;
      gap_sum[w] = 0;
      gap_count[w] = 0;
    }
    touched.clear();
  });

  std::unordered_map<std::string, SpacingSeries> out;
  out.reserve(n_words);
  for (SpacingSeries& s : series) {
    std::string key = s.word;
    out.emplace(std::move(key), std::move(s));
  }
  return out;
}

}  // namespace rmtsw
