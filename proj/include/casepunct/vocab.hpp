#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "casepunct/document.hpp"

namespace casepunct {

inline constexpr std::string_view kPadToken = "[PAD]";
inline constexpr std::string_view kUnkToken = "[UNK]";
inline constexpr std::string_view kBosToken = "[BOS]";
inline constexpr std::string_view kContinuationPrefix = "##";

// Immutable after build; ids are dense and 0-based with the specials first.
struct Vocabulary {
  std::vector<std::string> tokens;
  std::unordered_map<std::string, int> index;
  bool cased = false;

  static constexpr int kPadId = 0;
  static constexpr int kUnkId = 1;
  static constexpr int kBosId = 2;

  int size() const { return static_cast<int>(tokens.size()); }
  int lookup(const std::string& token) const {
    auto it = index.find(token);
    return it == index.end() ? -1 : it->second;
  }

  std::string to_json() const;
  static Vocabulary from_json(const std::string& text);
  uint64_t hash() const;
};

// Iterative pair merging over the word frequency table with WordPiece-style
// scoring: merge the pair maximizing count(pair) / (count(left)*count(right)).
// Ties break on the merged surface form, then on the left token. The base
// alphabet holds every seen character in both word-initial and continuation
// form, so target_size must cover specials + 2 * distinct characters.
Vocabulary build_vocab(std::span<const LabeledDocument> corpus,
                       size_t target_size, bool cased, long long min_freq = 1);

Vocabulary build_vocab_from_words(
    std::span<const std::vector<std::string>> word_seqs, size_t target_size,
    bool cased, long long min_freq = 1);

}  // namespace casepunct
