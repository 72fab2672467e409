#pragma once

#include <string>
#include <vector>

#include "casepunct/labels.hpp"

namespace casepunct {

// One word sequence with one casing and one punctuation label per word.
// extract_labels produces documents whose words are lowercase and free of
// schema punctuation; ablation runs reuse the container with rendered
// (possibly cased or punctuated) input tokens and the original labels.
struct LabeledDocument {
  std::string id;
  std::vector<std::string> words;
  std::vector<CasingLabel> casing;
  std::vector<PunctLabel> punct;

  size_t size() const { return words.size(); }
  bool empty() const { return words.empty(); }

  bool operator==(const LabeledDocument&) const = default;
};

}  // namespace casepunct
