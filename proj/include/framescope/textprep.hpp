#pragma once

// Tokenization, plural stemming, stopword filtering, frequency lists and the
// analysis vocabulary.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "framescope/error.hpp"
#include "framescope/utf8.hpp"

namespace framescope {

struct Token {
  std::string surface;
  std::string stem;

  bool operator==(const Token&) const = default;
};

using Stoplist = std::set<std::string, std::less<>>;

namespace detail {

inline bool is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

// ASCII letters and digits count as word characters, as does any non-ASCII
// code point outside the punctuation, symbol and space blocks.
inline bool is_word_char(char32_t cp) {
  if (cp < 0x80) return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z') || is_digit(cp);
  if (cp < 0xC0) return cp == 0xAA || cp == 0xB5 || cp == 0xBA;
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, symbols, arrows, box drawing
  if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
  if (cp >= 0xFE10 && cp <= 0xFE6F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF0F) return false;
  if (cp == utf8::kReplacement || cp == 0xFEFF) return false;
  return true;
}

inline char32_t to_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  return cp;
}

inline std::string lowercase(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t pos = 0; pos < s.size();) {
    const auto d = utf8::decode(s, pos);
    utf8::append(out, to_lower(d.cp));
    pos += d.length;
  }
  return out;
}

inline std::size_t code_points(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t pos = 0; pos < s.size(); pos += utf8::decode(s, pos).length) ++n;
  return n;
}

}  // namespace detail

/// Splits on every character that is neither a word character nor a hyphen
/// joining two word characters. Tokens with no letters are dropped. The
/// returned stem is the lowercased surface; plural stripping is separate.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t start = std::string_view::npos;
  bool has_letter = false;

  auto flush = [&](std::size_t end) {
    if (start != std::string_view::npos && has_letter) {
      std::string surface(text.substr(start, end - start));
      tokens.push_back({surface, detail::lowercase(surface)});
    }
    start = std::string_view::npos;
    has_letter = false;
  };

  for (std::size_t pos = 0; pos < text.size();) {
    const auto d = utf8::decode(text, pos);
    if (detail::is_word_char(d.cp)) {
      if (start == std::string_view::npos) start = pos;
      if (!detail::is_digit(d.cp)) has_letter = true;
    } else if (d.cp == U'-' && start != std::string_view::npos && pos + 1 < text.size() &&
               detail::is_word_char(utf8::decode(text, pos + 1).cp)) {
      // internal hyphen: keep going
    } else {
      flush(pos);
    }
    pos += d.length;
  }
  flush(text.size());
  return tokens;
}

/// Guards on plural stripping. Defaults avoid mangling short words ("gas")
/// and "-ss" endings ("boss").
struct PluralRule {
  std::size_t min_length = 4;
  bool keep_double_s = true;
};

/// Removes one trailing "s". Idempotent under the default rule.
inline std::string stem_plural(std::string_view token, const PluralRule& rule = {}) {
  if (token.empty() || token.back() != 's') return std::string(token);
  if (detail::code_points(token) < rule.min_length) return std::string(token);
  if (rule.keep_double_s && token.size() >= 2 && token[token.size() - 2] == 's') return std::string(token);
  return std::string(token.substr(0, token.size() - 1));
}

inline void stem_tokens(std::vector<Token>& tokens, const PluralRule& rule = {}) {
  for (auto& t : tokens) t.stem = stem_plural(t.stem, rule);
}

/// Drops tokens whose stem, or lowercased surface, is a stopword. The surface
/// check catches stopwords that plural stripping alters ("this" -> "thi").
inline std::vector<Token> remove_stopwords(std::span<const Token> tokens, const Stoplist& stoplist,
                                           Warnings* warnings = nullptr) {
  if (stoplist.empty()) warn(warnings, "stopword list is empty; nothing will be filtered");
  std::vector<Token> kept;
  kept.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (stoplist.contains(t.stem) || stoplist.contains(detail::lowercase(t.surface))) continue;
    kept.push_back(t);
  }
  return kept;
}

/// One lowercase word per line; `#` starts a comment; blank lines ignored.
inline Stoplist parse_stoplist(std::istream& in) {
  Stoplist words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r\n");
    words.insert(detail::lowercase(std::string_view(line).substr(first, last - first + 1)));
  }
  return words;
}

inline Stoplist load_stoplist(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("textprep", "cannot read stopword file " + path.string(), "check stopword_file or FRAMESCOPE_STOPWORDS");
  return parse_stoplist(in);
}

/// The USPTO full-text stopword list, identical to data/uspto_stopwords.txt.
inline const Stoplist& uspto_stoplist() {
  static const Stoplist words = {
      "a",          "accordance",    "according",   "all",       "also",         "an",
      "and",        "another",       "are",         "as",        "at",           "be",
      "because",    "been",          "being",       "by",        "claim",        "comprises",
      "corresponding", "could",      "described",   "desired",   "do",           "does",
      "each",       "embodiment",    "fig",         "figs",      "for",          "from",
      "further",    "generally",     "had",         "has",       "have",         "having",
      "herein",     "however",       "if",          "in",        "into",         "invention",
      "is",         "it",            "its",         "means",     "not",          "now",
      "of",         "on",            "onto",        "or",        "other",        "particularly",
      "preferably", "preferred",     "present",     "provide",   "provided",     "provides",
      "relatively", "respectively",  "said",        "should",    "since",        "some",
      "such",       "suitable",      "than",        "that",      "the",          "their",
      "then",       "there",         "thereby",     "therefore", "thereof",      "thereto",
      "these",      "they",          "this",        "those",     "thus",         "to",
      "use",        "various",       "was",         "were",      "what",         "when",
      "where",      "whereby",       "wherein",     "which",     "while",        "who",
      "will",       "with",          "would"};
  return words;
}

/// tokenize -> stem_plural -> remove_stopwords.
inline std::vector<Token> preprocess(std::string_view text, const Stoplist& stoplist, const PluralRule& rule = {}) {
  auto tokens = tokenize(text);
  stem_tokens(tokens, rule);
  return remove_stopwords(tokens, stoplist);
}

struct FrequencyList {
  std::string scope;  // document id or window label
  std::map<std::string, std::int64_t, std::less<>> counts;

  std::int64_t count(std::string_view stem) const {
    auto it = counts.find(stem);
    return it == counts.end() ? 0 : it->second;
  }
  std::int64_t total() const {
    std::int64_t sum = 0;
    for (const auto& [_, c] : counts) sum += c;
    return sum;
  }

  bool operator==(const FrequencyList&) const = default;
};

inline FrequencyList count_terms(std::string scope, std::span<const Token> tokens) {
  FrequencyList freq{std::move(scope), {}};
  for (const auto& t : tokens) ++freq.counts[t.stem];
  return freq;
}

inline FrequencyList merge_frequencies(std::string scope, std::span<const FrequencyList> parts) {
  FrequencyList merged{std::move(scope), {}};
  for (const auto& part : parts)
    for (const auto& [stem, c] : part.counts) merged.counts[stem] += c;
  return merged;
}

inline void write_frequency_csv(std::ostream& out, const FrequencyList& freq) {
  out << "stem,count\n";
  for (const auto& [stem, c] : freq.counts) out << stem << ',' << c << '\n';
}

struct VocabularyEntry {
  std::string stem;
  std::int64_t window_frequency = 0;
  std::int64_t doc_frequency = 0;
  bool included = false;

  bool operator==(const VocabularyEntry&) const = default;
};

/// Every stem seen in a window, sorted by (frequency desc, stem asc). Entries
/// that missed the cutoff or the cap are kept with `included == false`.
struct Vocabulary {
  std::vector<VocabularyEntry> entries;
  std::int64_t min_occurrences = 0;
  std::size_t cap = 100;
  bool strict = true;  // frequency > min_occurrences; false means >=

  std::vector<std::string> included_stems() const {
    std::vector<std::string> out;
    for (const auto& e : entries)
      if (e.included) out.push_back(e.stem);
    return out;
  }
  std::size_t included_count() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.included; }));
  }
  const VocabularyEntry* find(std::string_view stem) const {
    for (const auto& e : entries)
      if (e.stem == stem) return &e;
    return nullptr;
  }
  bool contains(std::string_view stem) const { return find(stem) != nullptr; }

  bool operator==(const Vocabulary&) const = default;
};

struct VocabularyOptions {
  std::int64_t min_occurrences = 10;
  std::size_t cap = 100;
  bool strict = true;
};

/// Applies the frequency cutoff, then truncates to `cap`. `per_doc` supplies
/// document frequencies; pass an empty span when they are not needed.
inline Vocabulary build_vocabulary(const FrequencyList& window_freq, const VocabularyOptions& opts,
                                   std::span<const FrequencyList> per_doc = {}) {
  if (opts.min_occurrences < 0) throw Error("textprep", "min_occurrences must be >= 0");
  if (opts.cap < 1) throw Error("textprep", "vocabulary cap must be >= 1");

  Vocabulary vocab;
  vocab.min_occurrences = opts.min_occurrences;
  vocab.cap = opts.cap;
  vocab.strict = opts.strict;
  vocab.entries.reserve(window_freq.counts.size());
  for (const auto& [stem, c] : window_freq.counts) {
    if (c <= 0) continue;
    std::int64_t df = 0;
    for (const auto& doc : per_doc) df += doc.count(stem) > 0 ? 1 : 0;
    vocab.entries.push_back({stem, c, df, false});
  }
  std::sort(vocab.entries.begin(), vocab.entries.end(), [](const VocabularyEntry& a, const VocabularyEntry& b) {
    if (a.window_frequency != b.window_frequency) return a.window_frequency > b.window_frequency;
    return a.stem < b.stem;
  });

  std::size_t taken = 0;
  for (auto& e : vocab.entries) {
    const bool passes = opts.strict ? e.window_frequency > opts.min_occurrences : e.window_frequency >= opts.min_occurrences;
    if (!passes || taken == opts.cap) continue;
    e.included = true;
    ++taken;
  }
  if (taken == 0)
    throw Error("textprep", "vocabulary empty; lower min_occurrences",
                "no stem occurs more than " + std::to_string(opts.min_occurrences) + " times in '" + window_freq.scope + "'");
  return vocab;
}

}  // namespace framescope
