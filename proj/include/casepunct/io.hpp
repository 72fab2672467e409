#pragma once

#include <json.hpp>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "casepunct/corpus.hpp"
#include "casepunct/errors.hpp"
#include "casepunct/metrics.hpp"
#include "casepunct/train.hpp"
#include "casepunct/vocab.hpp"

namespace casepunct {

std::string read_file(const std::string& path);

// Writes to a sibling temp file and renames into place.
void write_file_atomic(const std::string& path, std::string_view contents);

// Rejects keys outside the allowed set.
void check_keys(const nlohmann::json& obj,
                std::span<const std::string_view> allowed,
                const std::string& where,
                ErrorCode code = ErrorCode::InvalidArgument);

struct RawDocument {
  std::string id;
  std::string text;
};

// One {"id": ..., "text": ...} JSON object per line.
std::vector<RawDocument> parse_raw_jsonl(std::string_view text);
std::vector<RawDocument> load_raw_jsonl(const std::string& path);

// Labeled corpus: one document per line with explicit label arrays.
std::string labeled_to_jsonl(std::span<const LabeledDocument> docs);
std::vector<LabeledDocument> parse_labeled_jsonl(std::string_view text);
void save_labeled_jsonl(std::span<const LabeledDocument> docs,
                        const std::string& path);
std::vector<LabeledDocument> load_labeled_jsonl(const std::string& path);

nlohmann::json stats_to_json(const CorpusStats& stats);
nlohmann::json report_to_json(const EvalReport& report);
nlohmann::json sweep_to_json(const SweepResult& result);

nlohmann::json encoder_config_to_json(const EncoderConfig& config);
EncoderConfig encoder_config_from_json(const nlohmann::json& j);
nlohmann::json train_config_to_json(const TrainConfig& config);
TrainConfig train_config_from_json(const nlohmann::json& j);
nlohmann::json split_spec_to_json(const SplitSpec& spec);
SplitSpec split_spec_from_json(const nlohmann::json& j);

}  // namespace casepunct
