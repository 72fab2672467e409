#include "casepunct/labels.hpp"

namespace casepunct {

std::optional<CasingLabel> parse_casing_label(std::string_view name) {
  for (int i = 0; i < kNumCasingLabels; ++i) {
    if (kCasingNames[i] == name) return static_cast<CasingLabel>(i);
  }
  return std::nullopt;
}

std::optional<PunctLabel> parse_punct_label(std::string_view name) {
  for (int i = 0; i < kNumPunctLabels; ++i) {
    if (kPunctNames[i] == name) return static_cast<PunctLabel>(i);
  }
  return std::nullopt;
}

}  // namespace casepunct
