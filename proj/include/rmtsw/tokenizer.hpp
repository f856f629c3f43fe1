#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rmtsw {

struct TokenizerConfig {
  /// ASCII characters that end a sentence.
  std::string sentence_breaks = ".!?\n";
  /// When true, digits 0-9 count as token characters instead of separators.
  bool include_digits = false;
};

/// One article: ordered sentences of lowercased tokens.
struct Document {
  std::string article_id;
  std::vector<std::vector<std::string>> sentences;
  std::size_t length_words = 0;
};

/// Split raw UTF-8 text into sentences of lowercased word tokens. A token is
/// a maximal run of letters (ASCII, Latin-1 supplement, Latin Extended-A);
/// every other character separates tokens. Empty sentences are dropped.
Document tokenize(std::string_view raw_text, const TokenizerConfig& config = {});

}  // namespace rmtsw
