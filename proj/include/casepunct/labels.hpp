#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace casepunct {

enum class CasingLabel : uint8_t { AUC = 0, LC = 1, UC = 2 };
enum class PunctLabel : uint8_t {
  Blank = 0,
  FullStop = 1,
  Comma = 2,
  Question = 3,
  Exclamation = 4,
  SemiColon = 5,
  DoubleDash = 6,
  Ellipsis = 7,
};

inline constexpr int kNumCasingLabels = 3;
inline constexpr int kNumPunctLabels = 8;

inline constexpr std::array<std::string_view, kNumCasingLabels> kCasingNames = {
    "AUC", "LC", "UC"};
inline constexpr std::array<std::string_view, kNumPunctLabels> kPunctNames = {
    "Blank",     "FullStop",  "Comma",      "Question",
    "Exclamation", "SemiColon", "DoubleDash", "Ellipsis"};

// Surface form each punctuation label renders to (Blank renders to nothing).
inline constexpr std::array<std::string_view, kNumPunctLabels> kPunctMarks = {
    "", ".", ",", "?", "!", ";", "--", "..."};

inline std::string_view to_string(CasingLabel label) {
  return kCasingNames[static_cast<size_t>(label)];
}
inline std::string_view to_string(PunctLabel label) {
  return kPunctNames[static_cast<size_t>(label)];
}
inline std::string_view punct_mark(PunctLabel label) {
  return kPunctMarks[static_cast<size_t>(label)];
}

std::optional<CasingLabel> parse_casing_label(std::string_view name);
std::optional<PunctLabel> parse_punct_label(std::string_view name);

}  // namespace casepunct
