// Generates the bundled synthetic corpus: a JSONL file of pseudo-English
// articles with a Zipf-distributed vocabulary and per-document topic bursts,
// so that frequent words produce smooth spacing series while rarer words
// cluster. The generator is fully deterministic for a given seed; the
// repository ships its output so tests never depend on regeneration.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Strictly inside (0,1) so the value is always a valid CDF argument.
  double uniform() { return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52; }

  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

const std::vector<std::string> kFunctionWords = {
    "the",  "of",   "and",  "to",   "in",   "a",    "is",    "was",  "for",  "on",
    "as",   "with", "by",   "at",   "from", "it",   "an",    "be",   "this", "that",
    "are",  "or",   "his",  "her",  "its",  "not",  "but",   "were", "have", "has",
    "had",  "which", "they", "we",   "you",  "all",  "one",   "more", "when", "also"};

std::vector<std::string> make_content_words(std::size_t count, SplitMix64& rng) {
  static const std::vector<std::string> onsets = {
      "b",  "c",  "d",  "f",  "g",  "h",  "j",  "k",  "l",  "m",  "n",  "p",  "r",
      "s",  "t",  "v",  "w",  "z",  "br", "ch", "cl", "cr", "dr", "fl", "fr", "gl",
      "gr", "pl", "pr", "sc", "sh", "sk", "sl", "sm", "sn", "sp", "st", "tr"};
  static const std::vector<std::string> vowels = {"a",  "e",  "i",  "o",  "u",
                                                  "ai", "ea", "ee", "io", "ou"};
  std::vector<std::string> words;
  std::vector<std::string> seen(kFunctionWords);
  std::sort(seen.begin(), seen.end());
  while (words.size() < count) {
    std::string w;
    const std::uint64_t syllables = 2 + rng.below(3);
    for (std::uint64_t s = 0; s < syllables; ++s) {
      w += onsets[rng.below(onsets.size())];
      w += vowels[rng.below(vowels.size())];
    }
    if (std::binary_search(seen.begin(), seen.end(), w)) continue;
    seen.insert(std::lower_bound(seen.begin(), seen.end(), w), w);
    words.push_back(w);
  }
  return words;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic test corpus"};
  std::uint64_t n_docs = 500;
  std::uint64_t seed = 20240817;
  std::size_t n_content = 1400;
  std::string out_path = "data/mini_corpus.jsonl";
  app.add_option("--docs", n_docs, "Number of documents");
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--content-words", n_content, "Size of the generated vocabulary tail");
  app.add_option("--out", out_path, "Output JSONL path");
  CLI11_PARSE(app, argc, argv);

  SplitMix64 rng{seed};

  std::vector<std::string> vocab(kFunctionWords);
  {
    std::vector<std::string> content = make_content_words(n_content, rng);
    vocab.insert(vocab.end(), content.begin(), content.end());
  }
  const std::size_t v = vocab.size();

  // Zipf weights 1/rank; the exponent is kept at exactly 1 so the table needs
  // no pow() and regenerates bit-identically everywhere.
  std::vector<double> cumulative(v);
  double total = 0.0;
  for (std::size_t r = 0; r < v; ++r) {
    total += 1.0 / static_cast<double>(r + 1);
    cumulative[r] = total;
  }

  auto zipf_draw = [&]() -> std::size_t {
    const double u = rng.uniform() * total;
    return static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
  };

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << out_path << " for writing\n";
    return 1;
  }

  const std::size_t topic_pool = std::min<std::size_t>(600, n_content);
  for (std::uint64_t d = 0; d < n_docs; ++d) {
    // Each article leans on a small topic set of mid-frequency words, which
    // gives content words the bursty per-article statistics the fitting
    // stage is meant to distinguish from the evenly spread function words.
    std::vector<std::size_t> topic(30);
    for (std::size_t& t : topic) {
      t = kFunctionWords.size() + static_cast<std::size_t>(rng.below(topic_pool));
    }

    const std::uint64_t doc_len = 400 + rng.below(501);
    std::string text;
    text.reserve(doc_len * 8);

    std::uint64_t written = 0;
    while (written < doc_len) {
      const std::uint64_t sentence_len = std::min<std::uint64_t>(6 + rng.below(12),
                                                                 doc_len - written);
      for (std::uint64_t i = 0; i < sentence_len; ++i) {
        const double kind = rng.uniform();
        std::string word;
        if (kind < 0.004) {
          word = std::to_string(rng.below(2000));  // stray numerals, dropped by default
        } else if (kind < 0.30) {
          word = vocab[topic[rng.below(topic.size())]];
        } else {
          word = vocab[zipf_draw()];
        }
        if (i == 0) {
          word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
        } else {
          text += ' ';
        }
        text += word;
        if (i + 1 < sentence_len && rng.uniform() < 0.06) text += ',';
      }
      const double punct = rng.uniform();
      text += punct < 0.8 ? '.' : (punct < 0.9 ? '!' : '?');
      text += ' ';
      written += sentence_len;
    }
    if (!text.empty() && text.back() == ' ') text.pop_back();

    char id[16];
    std::snprintf(id, sizeof id, "doc%04llu", static_cast<unsigned long long>(d));
    nlohmann::ordered_json line;
    line["id"] = id;
    line["text"] = text;
    out << line.dump() << '\n';
  }
  if (!out.flush()) {
    std::cerr << "error: write failed for " << out_path << '\n';
    return 1;
  }
  std::cout << "wrote " << n_docs << " documents to " << out_path << '\n';
  return 0;
}
