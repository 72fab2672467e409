#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "casepunct/document.hpp"
#include "casepunct/metrics.hpp"

namespace casepunct {

// Per-word casing and punctuation labels from rich (cased, punctuated) text.
// Words come out lowercased with schema and non-schema punctuation stripped;
// word-internal apostrophes and hyphens are kept. A word's punctuation label
// is the first schema mark that follows it before the next word begins, so
// standalone marks ("Then -- what") attach to the preceding word.
LabeledDocument extract_labels(std::string_view raw, std::string doc_id);

// Inverse of extract_labels for valid documents: single spaces between words,
// casing applied per label, schema mark appended when with_punct.
std::string render(const LabeledDocument& doc, bool with_casing,
                   bool with_punct);

// Per-word rendered surface forms (one token per word); used to build the
// input ablations where casing or punctuation is part of the model input.
std::vector<std::string> ablated_words(const LabeledDocument& doc,
                                       bool with_casing, bool with_punct);

struct LabelCount {
  long long count = 0;
  double percent = 0.0;
};

struct JointCasingRow {
  std::array<double, kNumCasingLabels> p{};  // next-word casing distribution
  long long support = 0;                     // 0 marks a row with no pairs
};

struct CorpusStats {
  long long total_words = 0;
  std::array<LabelCount, kNumCasingLabels> casing;
  std::array<LabelCount, kNumPunctLabels> punct;
  // joint[p] = distribution of the casing of the word immediately following a
  // word labeled p, within documents only.
  std::array<JointCasingRow, kNumPunctLabels> joint;
};

CorpusStats compute_stats(std::span<const LabeledDocument> corpus);

struct SplitSpec {
  double train_ratio = 0.75;
  double dev_ratio = 0.05;
  double test_ratio = 0.20;
  uint64_t seed = 0;
};

struct CorpusSplit {
  std::vector<LabeledDocument> train;
  std::vector<LabeledDocument> dev;
  std::vector<LabeledDocument> test;
};

CorpusSplit split_corpus(std::span<const LabeledDocument> corpus,
                         const SplitSpec& spec);

// Seeded sample without replacement. Subsets are nested: for m < n,
// subset(c, m, s) is a prefix of subset(c, n, s).
std::vector<LabeledDocument> subset(std::span<const LabeledDocument> corpus,
                                    size_t n_documents, uint64_t seed);

// Predicts each word's casing as the argmax of the stats row keyed by the
// previous word's gold punctuation label (Blank row for document starts).
EvalReport most_frequent_casing_baseline(const CorpusStats& train_stats,
                                         std::span<const LabeledDocument> docs);

}  // namespace casepunct
