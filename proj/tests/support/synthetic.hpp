#pragma once

// Deterministic synthetic corpora for tests.
//
// Rule corpus: every label is a pure function of the word sequence, so a
// context-aware tagger can reach perfect accuracy while a context-free
// baseline cannot.  Punctuation rules (highest precedence first):
//   1. trigger words carry an intrinsic mark
//        stop -> FullStop     really -> Question    wow -> Exclamation
//        however -> SemiColon anyway -> DoubleDash  well -> Ellipsis
//   2. the word two positions after "so" takes a FullStop (lag context)
//   3. the word right before "but" takes a Comma (lookahead context)
//   4. otherwise Blank
// Casing: acronyms are AUC; the first word and any word following a
// FullStop/Question/Exclamation is UC; everything else LC.  The casing of a
// word therefore depends on the punctuation label of its predecessor, which
// is what the multi-task tests exploit.
//
// Domain profiles share the rules but shift the word and trigger
// distributions, giving a source/target pair for transfer experiments.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "casepunct/corpus.hpp"
#include "casepunct/document.hpp"
#include "casepunct/labels.hpp"
#include "casepunct/rng.hpp"

namespace casepunct::testing {

inline double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

struct DomainProfile {
  std::vector<std::string> fillers;
  std::vector<double> trigger_weights;  // parallel to trigger_words()
  double trigger_prob = 0.20;
  double acronym_prob = 0.06;
  double so_prob = 0.05;
  double but_prob = 0.07;
  int min_words = 8;
  int max_words = 14;
};

inline const std::vector<std::string>& trigger_words() {
  static const std::vector<std::string> kTriggers = {
      "stop", "really", "wow", "however", "anyway", "well"};
  return kTriggers;
}

inline const std::vector<PunctLabel>& trigger_marks() {
  static const std::vector<PunctLabel> kMarks = {
      PunctLabel::FullStop,  PunctLabel::Question,   PunctLabel::Exclamation,
      PunctLabel::SemiColon, PunctLabel::DoubleDash, PunctLabel::Ellipsis};
  return kMarks;
}

inline const std::vector<std::string>& acronym_words() {
  static const std::vector<std::string> kAcronyms = {"nasa", "fbi", "un"};
  return kAcronyms;
}

inline bool is_acronym(const std::string& w) {
  for (const auto& a : acronym_words()) {
    if (w == a) return true;
  }
  return false;
}

inline PunctLabel intrinsic_mark(const std::string& w) {
  const auto& names = trigger_words();
  for (size_t i = 0; i < names.size(); ++i) {
    if (w == names[i]) return trigger_marks()[i];
  }
  return PunctLabel::Blank;
}

// The labeling rules, exposed so tests can recompute expectations.
inline void apply_rules(const std::vector<std::string>& words,
                        std::vector<CasingLabel>& casing,
                        std::vector<PunctLabel>& punct) {
  const size_t n = words.size();
  casing.assign(n, CasingLabel::LC);
  punct.assign(n, PunctLabel::Blank);
  for (size_t i = 0; i < n; ++i) {
    const PunctLabel mark = intrinsic_mark(words[i]);
    if (mark != PunctLabel::Blank) {
      punct[i] = mark;
    } else if (i >= 2 && words[i - 2] == "so") {
      punct[i] = PunctLabel::FullStop;
    } else if (i + 1 < n && words[i + 1] == "but") {
      punct[i] = PunctLabel::Comma;
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (is_acronym(words[i])) {
      casing[i] = CasingLabel::AUC;
    } else if (i == 0) {
      casing[i] = CasingLabel::UC;
    } else if (punct[i - 1] == PunctLabel::FullStop ||
               punct[i - 1] == PunctLabel::Question ||
               punct[i - 1] == PunctLabel::Exclamation) {
      casing[i] = CasingLabel::UC;
    }
  }
}

inline DomainProfile source_profile() {
  DomainProfile p;
  p.fillers = {"alpha", "bravo",  "charlie", "delta", "echo",
               "fox",   "golf",   "hotel",   "india", "jazz",
               "kilo",  "lima",   "mike",    "nova",  "oscar"};
  p.trigger_weights = {3.0, 2.0, 2.0, 1.0, 1.0, 1.0};
  return p;
}

inline DomainProfile target_profile() {
  DomainProfile p;
  p.fillers = {"papa",  "quebec", "romeo", "sierra", "tango",
               "uncle", "victor", "whisk", "alpha",  "bravo"};
  p.trigger_weights = {1.0, 1.0, 1.0, 3.0, 3.0, 3.0};
  p.trigger_prob = 0.24;
  p.so_prob = 0.07;
  p.but_prob = 0.09;
  return p;
}

inline LabeledDocument make_rule_doc(const DomainProfile& p,
                                     std::mt19937_64& rng, std::string id) {
  LabeledDocument doc;
  doc.id = std::move(id);

  double weight_sum = 0.0;
  for (double w : p.trigger_weights) weight_sum += w;

  const int span = p.max_words - p.min_words + 1;
  const size_t n =
      static_cast<size_t>(p.min_words) +
      static_cast<size_t>(bounded_rand(rng, static_cast<uint64_t>(span)));
  doc.words.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const double r = uniform01(rng);
    double edge = p.acronym_prob;
    if (r < edge) {
      const auto& acr = acronym_words();
      doc.words.push_back(acr[bounded_rand(rng, acr.size())]);
      continue;
    }
    edge += p.trigger_prob;
    if (r < edge) {
      double pick = uniform01(rng) * weight_sum;
      size_t idx = 0;
      for (; idx + 1 < p.trigger_weights.size(); ++idx) {
        if (pick < p.trigger_weights[idx]) break;
        pick -= p.trigger_weights[idx];
      }
      doc.words.push_back(trigger_words()[idx]);
      continue;
    }
    edge += p.so_prob;
    if (r < edge) {
      doc.words.push_back("so");
      continue;
    }
    edge += p.but_prob;
    if (r < edge) {
      doc.words.push_back("but");
      continue;
    }
    doc.words.push_back(p.fillers[bounded_rand(rng, p.fillers.size())]);
  }
  apply_rules(doc.words, doc.casing, doc.punct);
  return doc;
}

inline std::vector<LabeledDocument> make_rule_corpus(
    const DomainProfile& p, size_t n_docs, uint64_t seed,
    const std::string& id_prefix) {
  std::mt19937_64 rng(mix_seed(seed, "rule_corpus"));
  std::vector<LabeledDocument> out;
  out.reserve(n_docs);
  for (size_t i = 0; i < n_docs; ++i) {
    out.push_back(make_rule_doc(p, rng, id_prefix + std::to_string(i)));
  }
  return out;
}

// Corpus with exogenous punctuation: marks are drawn at random (so the bare
// words carry no information about them) and casing follows the same
// after-mark rule as the rule corpus.  With punctuation present in the input
// the casing task is fully determined; without it, positions after hidden
// sentence-final marks are unpredictable.  Used by the input-ablation tests.
//
// The inventory is deliberately tiny and two letters long: each word then
// merges into a single vocabulary piece early, while the appended marks stay
// behind as shared continuation pieces (##. and friends), giving the model a
// compact, position-dense cue to attend to.  Longer words fragment into
// word-specific piece sequences that a small encoder memorises instead of
// generalising.
inline std::vector<LabeledDocument> make_conditioned_casing_corpus(
    size_t n_docs, uint64_t seed, const std::string& id_prefix) {
  static const std::vector<std::string> kWords = {"bo", "ca", "du", "fi",
                                                  "go", "ha", "ju", "ki"};
  static const std::vector<std::string> kAcros = {"un", "eu"};
  // Cumulative distribution over punct labels; the three sentence-final
  // marks that force the next word upper carry 40% of the mass so that the
  // no-punctuation arm has plenty it cannot predict.
  const std::vector<std::pair<PunctLabel, double>> dist = {
      {PunctLabel::FullStop, 0.22},   {PunctLabel::Question, 0.09},
      {PunctLabel::Exclamation, 0.09}, {PunctLabel::Comma, 0.08},
      {PunctLabel::SemiColon, 0.04},  {PunctLabel::DoubleDash, 0.04},
      {PunctLabel::Ellipsis, 0.04},   {PunctLabel::Blank, 1.0}};
  std::mt19937_64 rng(mix_seed(seed, "conditioned_casing"));
  std::vector<LabeledDocument> out;
  out.reserve(n_docs);
  for (size_t d = 0; d < n_docs; ++d) {
    LabeledDocument doc;
    doc.id = id_prefix + std::to_string(d);
    const size_t n = 6 + bounded_rand(rng, 4);
    std::vector<bool> acro(n, false);
    for (size_t i = 0; i < n; ++i) {
      acro[i] = uniform01(rng) < 0.08;
      doc.words.push_back(acro[i] ? kAcros[bounded_rand(rng, kAcros.size())]
                                  : kWords[bounded_rand(rng, kWords.size())]);
      double pick = uniform01(rng);
      PunctLabel mark = PunctLabel::Blank;
      double acc = 0.0;
      for (const auto& [label, mass] : dist) {
        acc = (label == PunctLabel::Blank) ? 1.0 : acc + mass;
        if (pick < acc) {
          mark = label;
          break;
        }
      }
      doc.punct.push_back(mark);
    }
    for (size_t i = 0; i < n; ++i) {
      if (acro[i]) {
        doc.casing.push_back(CasingLabel::AUC);
      } else if (i == 0 || doc.punct[i - 1] == PunctLabel::FullStop ||
                 doc.punct[i - 1] == PunctLabel::Question ||
                 doc.punct[i - 1] == PunctLabel::Exclamation) {
        doc.casing.push_back(CasingLabel::UC);
      } else {
        doc.casing.push_back(CasingLabel::LC);
      }
    }
    out.push_back(std::move(doc));
  }
  return out;
}

// Random labeled documents restricted to the label/word combinations that
// survive a render -> extract round trip:
//   - words are lowercase [a-z0-9'-], start and end alphanumeric, and never
//     have two punctuation characters in a row;
//   - UC needs a leading letter (otherwise rendering changes nothing);
//   - AUC needs at least two letters (single capitals read back as UC).
inline std::string random_roundtrip_word(std::mt19937_64& rng) {
  static const std::string kAlnum = "abcdefghijklmnopqrstuvwxyz0123456789";
  static const std::string kInner = "abcdefghijklmnopqrstuvwxyz0123456789'-";
  const size_t len = 1 + bounded_rand(rng, 8);
  std::string w;
  w.reserve(len);
  for (size_t i = 0; i < len; ++i) {
    const bool edge = (i == 0 || i + 1 == len);
    const bool prev_mark = !w.empty() && (w.back() == '\'' || w.back() == '-');
    const std::string& pool = (edge || prev_mark) ? kAlnum : kInner;
    w.push_back(pool[bounded_rand(rng, pool.size())]);
  }
  return w;
}

inline LabeledDocument make_roundtrip_doc(std::mt19937_64& rng,
                                          std::string id) {
  LabeledDocument doc;
  doc.id = std::move(id);
  const size_t n = 1 + bounded_rand(rng, 12);
  for (size_t i = 0; i < n; ++i) {
    std::string w = random_roundtrip_word(rng);
    int letters = 0;
    for (char c : w) {
      if (c >= 'a' && c <= 'z') ++letters;
    }
    std::vector<CasingLabel> allowed = {CasingLabel::LC};
    if (w[0] >= 'a' && w[0] <= 'z') allowed.push_back(CasingLabel::UC);
    if (letters >= 2) allowed.push_back(CasingLabel::AUC);
    doc.words.push_back(std::move(w));
    doc.casing.push_back(allowed[bounded_rand(rng, allowed.size())]);
    doc.punct.push_back(static_cast<PunctLabel>(
        bounded_rand(rng, static_cast<uint64_t>(kNumPunctLabels))));
  }
  return doc;
}

}  // namespace casepunct::testing
