#pragma once

#include <span>
#include <string>
#include <vector>

#include "casepunct/document.hpp"
#include "casepunct/vocab.hpp"

namespace casepunct {

inline constexpr int kNoWord = -1;      // word_index sentinel for BOS/PAD
inline constexpr int kIgnoreLabel = -1; // contributes zero loss

// One contiguous chunk of a document: subword ids with word alignment and
// the first-subword supervision mask.
struct Encoding {
  std::vector<int> token_ids;
  std::vector<int> word_index;        // index into the source word list
  std::vector<uint8_t> first_subword; // true iff first subword of its word

  size_t size() const { return token_ids.size(); }
};

// Greedy longest-match segmentation, BOS-prefixed contiguous chunks of at
// most max_len tokens, no word straddling a chunk boundary. Uncased
// vocabularies lowercase their input first.
std::vector<Encoding> encode(std::span<const std::string> words,
                             const Vocabulary& vocab, size_t max_len);

// Per-token label ids for one chunk; non-first subwords and specials carry
// kIgnoreLabel.
struct AlignedLabels {
  std::vector<int> casing;
  std::vector<int> punct;
};

std::vector<AlignedLabels> align_labels(const LabeledDocument& doc,
                                        std::span<const Encoding> encodings);

// A batch of chunks with their supervision and the chunk -> document map
// needed for the mean-over-documents loss reduction.
struct Batch {
  std::vector<Encoding> chunks;
  std::vector<AlignedLabels> labels;  // parallel to chunks
  std::vector<int> chunk_doc;         // document index within the batch
  int num_docs = 0;
};

// Encodes whole documents into one batch; words may be ablation inputs.
Batch make_batch(std::span<const LabeledDocument> docs,
                 const Vocabulary& vocab, size_t max_len);

}  // namespace casepunct
