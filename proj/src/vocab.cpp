#include "casepunct/vocab.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "casepunct/errors.hpp"

namespace casepunct {

namespace {

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// UTF-8 aware split into single-character strings.
std::vector<std::string> split_chars(const std::string& word) {
  std::vector<std::string> chars;
  size_t i = 0;
  while (i < word.size()) {
    const auto b0 = static_cast<unsigned char>(word[i]);
    size_t n = 1;
    if ((b0 & 0xE0) == 0xC0) n = 2;
    else if ((b0 & 0xF0) == 0xE0) n = 3;
    else if ((b0 & 0xF8) == 0xF0) n = 4;
    if (i + n > word.size()) n = 1;
    chars.push_back(word.substr(i, n));
    i += n;
  }
  return chars;
}

std::string surface_of(const std::string& token) {
  if (token.starts_with(kContinuationPrefix)) {
    return token.substr(kContinuationPrefix.size());
  }
  return token;
}

struct MergeCandidate {
  double score = -1.0;
  std::string surface;  // tie-break key
  std::string left;
  std::string right;
  bool valid() const { return score >= 0.0; }
};

}  // namespace

Vocabulary build_vocab_from_words(
    std::span<const std::vector<std::string>> word_seqs, size_t target_size,
    bool cased, long long min_freq) {
  // Word frequency table, first-seen order for determinism.
  std::vector<std::pair<std::string, long long>> word_freq;
  std::unordered_map<std::string, size_t> word_pos;
  for (const auto& seq : word_seqs) {
    for (const auto& raw : seq) {
      if (raw.empty()) continue;
      std::string w = cased ? raw : to_lower_ascii(raw);
      auto [it, inserted] = word_pos.try_emplace(w, word_freq.size());
      if (inserted) word_freq.emplace_back(std::move(w), 1);
      else word_freq[it->second].second += 1;
    }
  }
  if (word_freq.empty()) {
    raise(ErrorCode::EmptyCorpus, "cannot build a vocabulary from no words");
  }

  std::set<std::string> alphabet;
  for (const auto& [word, freq] : word_freq) {
    for (auto& c : split_chars(word)) alphabet.insert(c);
  }

  Vocabulary vocab;
  vocab.cased = cased;
  auto add_token = [&vocab](const std::string& t) {
    if (vocab.index.try_emplace(t, vocab.size()).second) {
      vocab.tokens.push_back(t);
    }
  };
  add_token(std::string(kPadToken));
  add_token(std::string(kUnkToken));
  add_token(std::string(kBosToken));
  for (const auto& c : alphabet) add_token(c);
  for (const auto& c : alphabet) add_token(std::string(kContinuationPrefix) + c);

  if (target_size < static_cast<size_t>(vocab.size())) {
    raise(ErrorCode::TargetTooSmall,
          "target " + std::to_string(target_size) + " below base vocabulary of " +
              std::to_string(vocab.size()));
  }

  // Symbol sequences per distinct word: initial char + ## continuations.
  std::vector<std::vector<std::string>> symbols(word_freq.size());
  for (size_t w = 0; w < word_freq.size(); ++w) {
    auto chars = split_chars(word_freq[w].first);
    symbols[w].push_back(chars[0]);
    for (size_t i = 1; i < chars.size(); ++i) {
      symbols[w].push_back(std::string(kContinuationPrefix) + chars[i]);
    }
  }

  while (static_cast<size_t>(vocab.size()) < target_size) {
    // Recount symbols and adjacent pairs; ordered maps keep selection
    // independent of hash iteration order.
    std::map<std::string, long long> sym_count;
    std::map<std::pair<std::string, std::string>, long long> pair_count;
    for (size_t w = 0; w < word_freq.size(); ++w) {
      const long long f = word_freq[w].second;
      const auto& syms = symbols[w];
      for (size_t i = 0; i < syms.size(); ++i) {
        sym_count[syms[i]] += f;
        if (i + 1 < syms.size()) pair_count[{syms[i], syms[i + 1]}] += f;
      }
    }

    MergeCandidate best;
    for (const auto& [pair, count] : pair_count) {
      if (count < min_freq) continue;
      const double denom = static_cast<double>(sym_count[pair.first]) *
                           static_cast<double>(sym_count[pair.second]);
      const double score = static_cast<double>(count) / denom;
      std::string surface = surface_of(pair.first) + surface_of(pair.second);
      const bool better =
          !best.valid() || score > best.score ||
          (score == best.score &&
           (surface < best.surface ||
            (surface == best.surface && pair.first < best.left)));
      if (better) {
        best = {score, std::move(surface), pair.first, pair.second};
      }
    }
    if (!best.valid()) break;  // nothing left to merge

    const std::string merged = best.left + surface_of(best.right);
    for (auto& syms : symbols) {
      for (size_t i = 0; i + 1 < syms.size();) {
        if (syms[i] == best.left && syms[i + 1] == best.right) {
          syms[i] = merged;
          syms.erase(syms.begin() + static_cast<ptrdiff_t>(i) + 1);
        } else {
          ++i;
        }
      }
    }
    add_token(merged);
  }
  return vocab;
}

Vocabulary build_vocab(std::span<const LabeledDocument> corpus,
                       size_t target_size, bool cased, long long min_freq) {
  std::vector<std::vector<std::string>> seqs;
  seqs.reserve(corpus.size());
  for (const auto& doc : corpus) seqs.push_back(doc.words);
  return build_vocab_from_words(seqs, target_size, cased, min_freq);
}

std::string Vocabulary::to_json() const {
  nlohmann::json j;
  j["format_version"] = 1;
  j["cased"] = cased;
  j["pad"] = kPadToken;
  j["unk"] = kUnkToken;
  j["bos"] = kBosToken;
  j["continuation_prefix"] = kContinuationPrefix;
  j["tokens"] = tokens;
  return j.dump(2);
}

Vocabulary Vocabulary::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::MalformedInput, std::string("vocabulary json: ") + e.what());
  }
  Vocabulary vocab;
  try {
    vocab.cased = j.at("cased").get<bool>();
    vocab.tokens = j.at("tokens").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::MalformedInput, std::string("vocabulary json: ") + e.what());
  }
  if (vocab.tokens.size() < 3 || vocab.tokens[0] != kPadToken ||
      vocab.tokens[1] != kUnkToken || vocab.tokens[2] != kBosToken) {
    raise(ErrorCode::MalformedInput, "vocabulary specials are missing");
  }
  for (int i = 0; i < vocab.size(); ++i) {
    if (!vocab.index.try_emplace(vocab.tokens[i], i).second) {
      raise(ErrorCode::MalformedInput,
            "duplicate vocabulary token: " + vocab.tokens[i]);
    }
  }
  return vocab;
}

uint64_t Vocabulary::hash() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::string_view s) {
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  };
  mix(cased ? "cased" : "uncased");
  for (const auto& t : tokens) mix(t);
  return h;
}

}  // namespace casepunct
