#include "rmtsw/tokenizer.hpp"

#include <cstdint>

namespace rmtsw {

namespace {

// Letters we accept: ASCII plus the Latin-1 supplement and Latin Extended-A
// blocks, which cover the Western and Central European alphabets. Everything
// else (other scripts, symbols, punctuation) separates tokens.
bool is_letter(char32_t c) {
  if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z')) return true;
  if (c >= 0x00C0 && c <= 0x00FF) return c != 0x00D7 && c != 0x00F7;
  return c >= 0x0100 && c <= 0x017F;
}

// Simple one-to-one lowercase mapping for the ranges above. Latin Extended-A
// alternates upper/lower case pairs; the parity of the uppercase code point
// flips twice inside the block.
char32_t to_lower(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  if (c >= 0x00C0 && c <= 0x00DE && c != 0x00D7) return c + 32;
  if (c == 0x0130) return U'i';   // dotted capital I
  if (c == 0x0178) return 0x00FF; // Y with diaeresis pairs with the Latin-1 block
  if (c >= 0x0100 && c <= 0x0137) return (c % 2 == 0) ? c + 1 : c;
  if (c >= 0x0139 && c <= 0x0148) return (c % 2 == 1) ? c + 1 : c;
  if (c >= 0x014A && c <= 0x0177) return (c % 2 == 0) ? c + 1 : c;
  if (c >= 0x0179 && c <= 0x017E) return (c % 2 == 1) ? c + 1 : c;
  return c;
}

void append_utf8(std::string& out, char32_t c) {
  if (c <= 0x7F) {
    out.push_back(static_cast<char>(c));
  } else if (c <= 0x7FF) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c <= 0xFFFF) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

// Decode one code point starting at `i`; advances `i`. Malformed sequences
// yield U+FFFD for the offending byte so bad input degrades to separators
// instead of derailing the scan.
char32_t next_code_point(std::string_view s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int extra;
  char32_t c;
  if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    c = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    c = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    c = b0 & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + static_cast<std::size_t>(extra) >= s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k <= extra; ++k) {
    if ((static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]) & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
  }
  for (int k = 1; k <= extra; ++k) {
    c = (c << 6) | (static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]) & 0x3F);
  }
  i += static_cast<std::size_t>(extra) + 1;
  return c;
}

}  // namespace

Document tokenize(std::string_view raw_text, const TokenizerConfig& config) {
  Document doc;
  std::vector<std::string> sentence;
  std::string token;

  auto flush_token = [&] {
    if (!token.empty()) {
      sentence.push_back(std::move(token));
      token.clear();
      ++doc.length_words;
    }
  };
  auto flush_sentence = [&] {
    flush_token();
    if (!sentence.empty()) {
      doc.sentences.push_back(std::move(sentence));
      sentence.clear();
    }
  };

  std::size_t i = 0;
  while (i < raw_text.size()) {
    const char32_t c = next_code_point(raw_text, i);
    if (is_letter(c)) {
      append_utf8(token, to_lower(c));
    } else if (config.include_digits && c >= U'0' && c <= U'9') {
      token.push_back(static_cast<char>(c));
    } else {
      flush_token();
      if (c <= 0x7F && config.sentence_breaks.find(static_cast<char>(c)) != std::string::npos) {
        flush_sentence();
      }
    }
  }
  flush_sentence();
  return doc;
}

}  // namespace rmtsw
