#include "casepunct/corpus.hpp"

#include <algorithm>
#include <cmath>

#include "casepunct/errors.hpp"
#include "casepunct/rng.hpp"

namespace casepunct {

namespace {

constexpr uint32_t kEmDash = 0x2014;
constexpr uint32_t kHorizontalBar = 0x2015;
constexpr uint32_t kEllipsisChar = 0x2026;

// Decodes one UTF-8 code point; malformed bytes pass through as single
// opaque code points so arbitrary input never faults.
uint32_t decode_utf8(std::string_view s, size_t pos, size_t& len) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) {
    len = 1;
    return b0;
  }
  size_t n = 0;
  if ((b0 & 0xE0) == 0xC0) n = 2;
  else if ((b0 & 0xF0) == 0xE0) n = 3;
  else if ((b0 & 0xF8) == 0xF0) n = 4;
  if (n == 0 || pos + n > s.size()) {
    len = 1;
    return b0;
  }
  uint32_t cp = b0 & (0x7F >> n);
  for (size_t i = 1; i < n; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) {
      len = 1;
      return b0;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  len = n;
  return cp;
}

bool is_ascii_space(uint32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
         cp == '\v';
}

bool is_schema_char(uint32_t cp) {
  return cp == '.' || cp == ',' || cp == '?' || cp == '!' || cp == ';' ||
         cp == '-' || cp == kEmDash || cp == kHorizontalBar ||
         cp == kEllipsisChar;
}

// Letters and digits form words; other non-ASCII code points are kept as
// opaque word characters (no case folding beyond ASCII).
bool is_word_char(uint32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
           (cp >= '0' && cp <= '9');
  }
  return !is_schema_char(cp);
}

CasingLabel classify_casing(std::string_view surface) {
  int upper = 0;
  int lower = 0;
  for (char c : surface) {
    if (c >= 'A' && c <= 'Z') ++upper;
    else if (c >= 'a' && c <= 'z') ++lower;
  }
  if (upper == 0) return CasingLabel::LC;
  // Acronym-style all-caps needs at least two letters; "I" and "A1" are UC.
  if (lower == 0 && upper >= 2) return CasingLabel::AUC;
  return CasingLabel::UC;
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

struct DocumentBuilder {
  LabeledDocument doc;
  std::string buffer;
  bool last_word_open = false;

  void flush_word() {
    if (buffer.empty()) return;
    doc.casing.push_back(classify_casing(buffer));
    doc.words.push_back(to_lower_ascii(buffer));
    doc.punct.push_back(PunctLabel::Blank);
    last_word_open = true;
    buffer.clear();
  }

  // First schema mark after a word wins; later marks before the next word
  // are dropped.
  void attach(PunctLabel mark) {
    flush_word();
    if (last_word_open && !doc.words.empty()) {
      doc.punct.back() = mark;
      last_word_open = false;
    }
  }
};

}  // namespace

LabeledDocument extract_labels(std::string_view raw, std::string doc_id) {
  DocumentBuilder b;
  b.doc.id = std::move(doc_id);

  size_t i = 0;
  while (i < raw.size()) {
    size_t len = 0;
    const uint32_t cp = decode_utf8(raw, i, len);

    if (is_ascii_space(cp)) {
      b.flush_word();
      i += len;
      continue;
    }
    if (is_word_char(cp)) {
      b.buffer.append(raw.substr(i, len));
      i += len;
      continue;
    }
    if (cp == '-') {
      size_t run = 1;
      while (i + run < raw.size() && raw[i + run] == '-') ++run;
      if (run >= 2) {
        b.attach(PunctLabel::DoubleDash);
      } else {
        size_t next_len = 0;
        const bool internal =
            !b.buffer.empty() && i + 1 < raw.size() &&
            is_word_char(decode_utf8(raw, i + 1, next_len));
        if (internal) b.buffer.push_back('-');
      }
      i += run;
      continue;
    }
    if (cp == '\'') {
      size_t next_len = 0;
      const bool internal = !b.buffer.empty() && i + 1 < raw.size() &&
                            is_word_char(decode_utf8(raw, i + 1, next_len));
      if (internal) b.buffer.push_back('\'');
      i += 1;
      continue;
    }
    if (cp == '.') {
      size_t run = 1;
      while (i + run < raw.size() && raw[i + run] == '.') ++run;
      b.attach(run >= 3 ? PunctLabel::Ellipsis : PunctLabel::FullStop);
      i += run;
      continue;
    }
    switch (cp) {
      case ',': b.attach(PunctLabel::Comma); break;
      case '?': b.attach(PunctLabel::Question); break;
      case '!': b.attach(PunctLabel::Exclamation); break;
      case ';': b.attach(PunctLabel::SemiColon); break;
      case kEmDash:
      case kHorizontalBar: b.attach(PunctLabel::DoubleDash); break;
      case kEllipsisChar: b.attach(PunctLabel::Ellipsis); break;
      default:
        // Non-schema punctuation and symbols are stripped.
        break;
    }
    i += len;
  }
  b.flush_word();
  return b.doc;
}

namespace {

std::string apply_casing(const std::string& word, CasingLabel label) {
  std::string out = word;
  switch (label) {
    case CasingLabel::LC:
      break;
    case CasingLabel::UC:
      if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') {
        out[0] = static_cast<char>(out[0] - 'a' + 'A');
      }
      break;
    case CasingLabel::AUC:
      for (char& c : out) {
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
      }
      break;
  }
  return out;
}

}  // namespace

std::vector<std::string> ablated_words(const LabeledDocument& doc,
                                       bool with_casing, bool with_punct) {
  std::vector<std::string> out;
  out.reserve(doc.size());
  for (size_t i = 0; i < doc.size(); ++i) {
    std::string w =
        with_casing ? apply_casing(doc.words[i], doc.casing[i]) : doc.words[i];
    if (with_punct) w += punct_mark(doc.punct[i]);
    out.push_back(std::move(w));
  }
  return out;
}

std::string render(const LabeledDocument& doc, bool with_casing,
                   bool with_punct) {
  std::string out;
  const auto tokens = ablated_words(doc, with_casing, with_punct);
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

CorpusStats compute_stats(std::span<const LabeledDocument> corpus) {
  CorpusStats stats;
  std::array<long long, kNumPunctLabels * kNumCasingLabels> joint_counts{};

  for (const auto& doc : corpus) {
    stats.total_words += static_cast<long long>(doc.size());
    for (size_t i = 0; i < doc.size(); ++i) {
      stats.casing[static_cast<size_t>(doc.casing[i])].count += 1;
      stats.punct[static_cast<size_t>(doc.punct[i])].count += 1;
      if (i + 1 < doc.size()) {
        const auto p = static_cast<size_t>(doc.punct[i]);
        const auto c = static_cast<size_t>(doc.casing[i + 1]);
        joint_counts[p * kNumCasingLabels + c] += 1;
      }
    }
  }
  if (stats.total_words == 0) {
    raise(ErrorCode::EmptyCorpus, "corpus has no words");
  }

  const double total = static_cast<double>(stats.total_words);
  for (auto& c : stats.casing) c.percent = 100.0 * c.count / total;
  for (auto& p : stats.punct) p.percent = 100.0 * p.count / total;

  for (int p = 0; p < kNumPunctLabels; ++p) {
    auto& row = stats.joint[p];
    long long support = 0;
    for (int c = 0; c < kNumCasingLabels; ++c) {
      support += joint_counts[p * kNumCasingLabels + c];
    }
    row.support = support;
    if (support > 0) {
      for (int c = 0; c < kNumCasingLabels; ++c) {
        row.p[c] = static_cast<double>(joint_counts[p * kNumCasingLabels + c]) /
                   static_cast<double>(support);
      }
    }
  }
  return stats;
}

CorpusSplit split_corpus(std::span<const LabeledDocument> corpus,
                         const SplitSpec& spec) {
  const double sum = spec.train_ratio + spec.dev_ratio + spec.test_ratio;
  const bool in_range = spec.train_ratio >= 0.0 && spec.train_ratio <= 1.0 &&
                        spec.dev_ratio >= 0.0 && spec.dev_ratio <= 1.0 &&
                        spec.test_ratio >= 0.0 && spec.test_ratio <= 1.0;
  if (!in_range || std::abs(sum - 1.0) > 1e-12) {
    raise(ErrorCode::InvalidRatios, "split ratios must lie in [0,1] and sum to 1");
  }

  const size_t n = corpus.size();
  const auto order = shuffled_indices(n, spec.seed);
  auto count = [n](double ratio) {
    return static_cast<size_t>(std::floor(ratio * static_cast<double>(n) + 1e-9));
  };
  size_t n_train = count(spec.train_ratio);
  size_t n_dev = count(spec.dev_ratio);
  if (n_train + n_dev > n) n_dev = n - n_train;

  CorpusSplit split;
  for (size_t i = 0; i < n; ++i) {
    const auto& doc = corpus[order[i]];
    if (i < n_train) split.train.push_back(doc);
    else if (i < n_train + n_dev) split.dev.push_back(doc);
    else split.test.push_back(doc);
  }
  return split;
}

std::vector<LabeledDocument> subset(std::span<const LabeledDocument> corpus,
                                    size_t n_documents, uint64_t seed) {
  if (n_documents > corpus.size()) {
    raise(ErrorCode::TooFewDocuments,
          "requested " + std::to_string(n_documents) + " of " +
              std::to_string(corpus.size()) + " documents");
  }
  // Prefix of a seeded permutation, so subsets of growing size nest.
  const auto order = shuffled_indices(corpus.size(), seed);
  std::vector<LabeledDocument> out;
  out.reserve(n_documents);
  for (size_t i = 0; i < n_documents; ++i) out.push_back(corpus[order[i]]);
  return out;
}

EvalReport most_frequent_casing_baseline(
    const CorpusStats& train_stats, std::span<const LabeledDocument> docs) {
  const auto& blank_row =
      train_stats.joint[static_cast<size_t>(PunctLabel::Blank)];
  if (blank_row.support == 0) {
    raise(ErrorCode::InvalidArgument,
          "baseline needs nonzero support for the Blank row");
  }

  auto argmax_casing = [&](const JointCasingRow& row) {
    const JointCasingRow& r = row.support > 0 ? row : blank_row;
    int best = 0;
    for (int c = 1; c < kNumCasingLabels; ++c) {
      if (r.p[c] > r.p[best]) best = c;
    }
    return best;
  };

  ConfusionMatrix cm(kNumCasingLabels);
  for (const auto& doc : docs) {
    PunctLabel prev = PunctLabel::Blank;
    for (size_t i = 0; i < doc.size(); ++i) {
      const int pred =
          argmax_casing(train_stats.joint[static_cast<size_t>(prev)]);
      cm.add(static_cast<int>(doc.casing[i]), pred);
      prev = doc.punct[i];
    }
  }
  return report_casing(cm);
}

}  // namespace casepunct
