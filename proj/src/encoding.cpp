#include "casepunct/encoding.hpp"

#include <algorithm>

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

size_t codepoint_len(std::string_view s, size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  size_t n = 1;
  if ((b0 & 0xE0) == 0xC0) n = 2;
  else if ((b0 & 0xF0) == 0xE0) n = 3;
  else if ((b0 & 0xF8) == 0xF0) n = 4;
  if (pos + n > s.size()) n = 1;
  return n;
}

// Longest vocabulary match starting at pos; returns matched byte length or 0.
size_t longest_match(const std::string& word, size_t pos, bool word_initial,
                     const Vocabulary& vocab, int& id_out) {
  std::string candidate;
  for (size_t end = word.size(); end > pos; --end) {
    candidate.assign(word_initial ? "" : std::string(kContinuationPrefix));
    candidate.append(word, pos, end - pos);
    const int id = vocab.lookup(candidate);
    if (id >= 0) {
      id_out = id;
      return end - pos;
    }
  }
  return 0;
}

// Greedy segmentation of a single word; maximal runs of unmatched
// code points collapse into one UNK.
std::vector<int> segment_word(const std::string& word,
                              const Vocabulary& vocab) {
  std::vector<int> ids;
  size_t pos = 0;
  while (pos < word.size()) {
    int id = -1;
    const size_t matched = longest_match(word, pos, pos == 0, vocab, id);
    if (matched > 0) {
      ids.push_back(id);
      pos += matched;
      continue;
    }
    size_t end = pos + codepoint_len(word, pos);
    while (end < word.size()) {
      int probe = -1;
      if (longest_match(word, end, false, vocab, probe) > 0) break;
      end += codepoint_len(word, end);
    }
    ids.push_back(Vocabulary::kUnkId);
    pos = end;
  }
  return ids;
}

}  // namespace

std::vector<Encoding> encode(std::span<const std::string> words,
                             const Vocabulary& vocab, size_t max_len) {
  if (max_len < 2) {
    raise(ErrorCode::InvalidArgument, "max_len must fit BOS plus one token");
  }

  std::vector<Encoding> chunks;
  Encoding current;
  auto open_chunk = [&current]() {
    current = Encoding{};
    current.token_ids.push_back(Vocabulary::kBosId);
    current.word_index.push_back(kNoWord);
    current.first_subword.push_back(0);
  };
  open_chunk();

  for (size_t w = 0; w < words.size(); ++w) {
    const std::string word =
        vocab.cased ? words[w] : to_lower_ascii(words[w]);
    const auto ids = segment_word(word, vocab);
    if (ids.size() > max_len - 1) {
      raise(ErrorCode::WordTooLong,
            "word '" + words[w] + "' needs " + std::to_string(ids.size()) +
                " tokens but chunks hold " + std::to_string(max_len - 1));
    }
    if (current.size() + ids.size() > max_len) {
      chunks.push_back(std::move(current));
      open_chunk();
    }
    for (size_t i = 0; i < ids.size(); ++i) {
      current.token_ids.push_back(ids[i]);
      current.word_index.push_back(static_cast<int>(w));
      current.first_subword.push_back(i == 0 ? 1 : 0);
    }
  }
  if (current.size() > 1) chunks.push_back(std::move(current));
  return chunks;
}

std::vector<AlignedLabels> align_labels(const LabeledDocument& doc,
                                        std::span<const Encoding> encodings) {
  size_t supervised = 0;
  for (const auto& enc : encodings) {
    for (size_t t = 0; t < enc.size(); ++t) {
      if (enc.first_subword[t]) ++supervised;
      if (enc.word_index[t] != kNoWord &&
          (enc.word_index[t] < 0 ||
           enc.word_index[t] >= static_cast<int>(doc.size()))) {
        raise(ErrorCode::AlignmentMismatch,
              "encoding references word " + std::to_string(enc.word_index[t]) +
                  " of a " + std::to_string(doc.size()) + "-word document");
      }
    }
  }
  if (supervised != doc.size()) {
    raise(ErrorCode::AlignmentMismatch,
          "encodings carry " + std::to_string(supervised) +
              " first-subword tokens for a " + std::to_string(doc.size()) +
              "-word document");
  }

  std::vector<AlignedLabels> out;
  out.reserve(encodings.size());
  for (const auto& enc : encodings) {
    AlignedLabels labels;
    labels.casing.assign(enc.size(), kIgnoreLabel);
    labels.punct.assign(enc.size(), kIgnoreLabel);
    for (size_t t = 0; t < enc.size(); ++t) {
      if (enc.first_subword[t]) {
        const auto w = static_cast<size_t>(enc.word_index[t]);
        labels.casing[t] = static_cast<int>(doc.casing[w]);
        labels.punct[t] = static_cast<int>(doc.punct[w]);
      }
    }
    out.push_back(std::move(labels));
  }
  return out;
}

Batch make_batch(std::span<const LabeledDocument> docs,
                 const Vocabulary& vocab, size_t max_len) {
  Batch batch;
  for (const auto& doc : docs) {
    const auto encodings = encode(doc.words, vocab, max_len);
    auto labels = align_labels(doc, encodings);
    for (size_t i = 0; i < encodings.size(); ++i) {
      batch.chunks.push_back(encodings[i]);
      batch.labels.push_back(std::move(labels[i]));
      batch.chunk_doc.push_back(batch.num_docs);
    }
    ++batch.num_docs;
  }
  return batch;
}

}  // namespace casepunct
