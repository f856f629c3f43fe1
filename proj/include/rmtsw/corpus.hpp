#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "rmtsw/tokenizer.hpp"

namespace rmtsw {

/// Whether word gaps may span sentence boundaries within an article.
enum class GapScope { article, sentence };

struct VocabEntry {
  std::string word;
  std::uint64_t total_count = 0;
};

/// Words ordered by descending corpus frequency, ties broken lexicographically.
struct RankedVocabulary {
  std::vector<VocabEntry> entries;
};

/// One article's contribution to a word's series: the mean gap between
/// consecutive occurrences and the article length used as its weight.
struct SpacingSample {
  double avg_distance = 0.0;
  std::uint64_t article_length = 0;
  std::string article_id;
};

struct SpacingSeries {
  std::string word;
  std::vector<SpacingSample> samples;
};

/// Re-iterable stream of tokenized documents. Disk-backed sources re-read
/// their files on every pass, so two passes (vocabulary, then series) need
/// only one document in memory at a time.
class DocumentSource {
 public:
  virtual ~DocumentSource() = default;
  virtual void for_each(const std::function<void(const Document&)>& fn) = 0;
};

/// Directory of UTF-8 .txt files, one document per file, visited in sorted
/// filename order. The article id is the filename without extension.
std::unique_ptr<DocumentSource> open_text_directory(const std::string& dir,
                                                    TokenizerConfig config = {});

/// JSONL file of {"id": ..., "text": ...} objects, one per line. Duplicate
/// ids and malformed lines are errors (reported with the line number).
std::unique_ptr<DocumentSource> open_jsonl_file(const std::string& path,
                                                TokenizerConfig config = {});

/// Pre-tokenized documents held in memory (tests, small runs).
std::unique_ptr<DocumentSource> make_memory_source(std::vector<Document> docs);

/// Count every token across the corpus and keep the top_n most frequent
/// words. Throws std::runtime_error("empty corpus") when the stream yields
/// no documents or no tokens.
RankedVocabulary build_vocabulary(DocumentSource& corpus, std::size_t top_n = 10000);

/// Gaps between consecutive occurrences of `word` in one document, in token
/// units. With GapScope::sentence, occurrences in different sentences never
/// pair up. Fewer than 2 occurrences in scope yields an empty list.
std::vector<std::uint64_t> article_gaps(const Document& doc, const std::string& word,
                                        GapScope scope);

/// Single pass over the corpus building every vocabulary word's series of
/// (mean gap, article length) samples. Words never seen twice in any article
/// map to an empty series.
std::unordered_map<std::string, SpacingSeries> build_series(DocumentSource& corpus,
                                                            const RankedVocabulary& vocab,
                                                            GapScope scope);

}  // namespace rmtsw
