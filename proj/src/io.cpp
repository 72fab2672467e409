#include "casepunct/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace casepunct {

namespace {

using nlohmann::json;

json parse_line(std::string_view line, std::size_t line_no,
                const std::string& path) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    raise(ErrorCode::MalformedInput,
          path + ": line " + std::to_string(line_no) +
              " is not a JSON object");
  }
  return j;
}

// Applies fn to every non-empty line with a 1-based line number.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    const std::string_view line =
        end == std::string_view::npos ? text.substr(pos)
                                      : text.substr(pos, end - pos);
    ++line_no;
    bool blank = true;
    for (const char c : line) {
      if (c != ' ' && c != '\t' && c != '\r') {
        blank = false;
        break;
      }
    }
    if (!blank) fn(line, line_no);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
}

double require_number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    raise(ErrorCode::MalformedInput,
          where + ": missing or non-numeric \"" + key + "\"");
  }
  return j.at(key).get<double>();
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    raise(ErrorCode::MalformedInput, "cannot open " + path);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const std::string& path, std::string_view contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      raise(ErrorCode::MalformedInput, "cannot write " + tmp);
    }
    out.write(contents.data(),
              static_cast<std::streamsize>(contents.size()));
    if (!out) {
      raise(ErrorCode::MalformedInput, "write to " + tmp + " failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    raise(ErrorCode::MalformedInput,
          "cannot move " + tmp + " to " + path + ": " + ec.message());
  }
}

void check_keys(const nlohmann::json& obj,
                std::span<const std::string_view> allowed,
                const std::string& where, ErrorCode code) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const auto& a : allowed) {
      if (key == a) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      raise(code, where + ": unknown key \"" + key + "\"");
    }
  }
}

std::vector<RawDocument> parse_raw_jsonl(std::string_view text) {
  std::vector<RawDocument> docs;
  for_each_line(text, [&docs](std::string_view line, std::size_t line_no) {
    const json j = parse_line(line, line_no, "raw corpus");
    if (!j.contains("id") || !j.at("id").is_string() || !j.contains("text") ||
        !j.at("text").is_string()) {
      raise(ErrorCode::MalformedInput,
            "raw corpus: line " + std::to_string(line_no) +
                " needs string \"id\" and \"text\" fields");
    }
    docs.push_back(RawDocument{j.at("id").get<std::string>(),
                               j.at("text").get<std::string>()});
  });
  return docs;
}

std::vector<RawDocument> load_raw_jsonl(const std::string& path) {
  return parse_raw_jsonl(read_file(path));
}

std::string labeled_to_jsonl(std::span<const LabeledDocument> docs) {
  std::string out;
  for (const auto& doc : docs) {
    json j;
    j["format_version"] = 1;
    j["id"] = doc.id;
    j["words"] = doc.words;
    json casing = json::array();
    for (const auto c : doc.casing) casing.push_back(to_string(c));
    json punct = json::array();
    for (const auto p : doc.punct) punct.push_back(to_string(p));
    j["casing"] = std::move(casing);
    j["punct"] = std::move(punct);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<LabeledDocument> parse_labeled_jsonl(std::string_view text) {
  static constexpr std::string_view kKeys[] = {"format_version", "id", "words",
                                               "casing", "punct"};
  std::vector<LabeledDocument> docs;
  for_each_line(text, [&docs](std::string_view line, std::size_t line_no) {
    const std::string where = "labeled corpus: line " + std::to_string(line_no);
    const json j = parse_line(line, line_no, "labeled corpus");
    check_keys(j, kKeys, where, ErrorCode::MalformedInput);
    if (!j.contains("format_version") || j.at("format_version") != 1) {
      raise(ErrorCode::MalformedInput, where + ": unsupported format_version");
    }
    if (!j.contains("id") || !j.at("id").is_string() ||
        !j.contains("words") || !j.at("words").is_array() ||
        !j.contains("casing") || !j.at("casing").is_array() ||
        !j.contains("punct") || !j.at("punct").is_array()) {
      raise(ErrorCode::MalformedInput, where + ": missing document fields");
    }
    LabeledDocument doc;
    doc.id = j.at("id").get<std::string>();
    for (const auto& w : j.at("words")) {
      if (!w.is_string()) {
        raise(ErrorCode::MalformedInput, where + ": words must be strings");
      }
      doc.words.push_back(w.get<std::string>());
    }
    for (const auto& c : j.at("casing")) {
      const auto parsed =
          c.is_string() ? parse_casing_label(c.get<std::string>())
                        : std::nullopt;
      if (!parsed) {
        raise(ErrorCode::MalformedInput, where + ": bad casing label");
      }
      doc.casing.push_back(*parsed);
    }
    for (const auto& p : j.at("punct")) {
      const auto parsed = p.is_string()
                              ? parse_punct_label(p.get<std::string>())
                              : std::nullopt;
      if (!parsed) {
        raise(ErrorCode::MalformedInput, where + ": bad punctuation label");
      }
      doc.punct.push_back(*parsed);
    }
    if (doc.words.size() != doc.casing.size() ||
        doc.words.size() != doc.punct.size()) {
      raise(ErrorCode::MalformedInput,
            where + ": words and label arrays differ in length");
    }
    docs.push_back(std::move(doc));
  });
  return docs;
}

void save_labeled_jsonl(std::span<const LabeledDocument> docs,
                        const std::string& path) {
  write_file_atomic(path, labeled_to_jsonl(docs));
}

std::vector<LabeledDocument> load_labeled_jsonl(const std::string& path) {
  return parse_labeled_jsonl(read_file(path));
}

nlohmann::json stats_to_json(const CorpusStats& stats) {
  json casing = json::object();
  for (int i = 0; i < kNumCasingLabels; ++i) {
    casing[std::string(kCasingNames[static_cast<std::size_t>(i)])] = {
        {"count", stats.casing[static_cast<std::size_t>(i)].count},
        {"percent", stats.casing[static_cast<std::size_t>(i)].percent}};
  }
  json punct = json::object();
  for (int i = 0; i < kNumPunctLabels; ++i) {
    punct[std::string(kPunctNames[static_cast<std::size_t>(i)])] = {
        {"count", stats.punct[static_cast<std::size_t>(i)].count},
        {"percent", stats.punct[static_cast<std::size_t>(i)].percent}};
  }
  json joint = json::object();
  for (int i = 0; i < kNumPunctLabels; ++i) {
    const auto& row = stats.joint[static_cast<std::size_t>(i)];
    json dist = json::object();
    for (int c = 0; c < kNumCasingLabels; ++c) {
      dist[std::string(kCasingNames[static_cast<std::size_t>(c)])] =
          row.p[static_cast<std::size_t>(c)];
    }
    joint[std::string(kPunctNames[static_cast<std::size_t>(i)])] = {
        {"support", row.support}, {"next_casing", std::move(dist)}};
  }
  return json{{"format_version", 1},
              {"total_words", stats.total_words},
              {"casing", std::move(casing)},
              {"punct", std::move(punct)},
              {"joint_next_casing", std::move(joint)}};
}

nlohmann::json report_to_json(const EvalReport& report) {
  json classes = json::array();
  for (const auto& c : report.classes) {
    classes.push_back({{"label", c.label},
                       {"precision", c.precision},
                       {"recall", c.recall},
                       {"f1", c.f1},
                       {"support", c.support}});
  }
  return json{{"format_version", 1},
              {"task", report.task},
              {"macro_f1", report.macro_f1},
              {"total", report.total},
              {"classes", std::move(classes)}};
}

nlohmann::json sweep_to_json(const SweepResult& result) {
  json rows = json::array();
  for (const auto& row : result.rows) {
    json values = json::array();
    for (const auto& v : row.values) {
      if (v.has_value()) {
        values.push_back(*v);
      } else {
        values.push_back(nullptr);
      }
    }
    rows.push_back({{"setting", row.setting}, {"values", std::move(values)}});
  }
  return json{{"format_version", 1},
              {"name", result.name},
              {"columns", result.columns},
              {"rows", std::move(rows)}};
}

nlohmann::json encoder_config_to_json(const EncoderConfig& config) {
  return json{{"num_layers", config.num_layers},
              {"model_dim", config.model_dim},
              {"num_heads", config.num_heads},
              {"ffn_dim", config.ffn_dim},
              {"max_positions", config.max_positions},
              {"head_dropout", config.head_dropout},
              {"vocab_size", config.vocab_size}};
}

EncoderConfig encoder_config_from_json(const nlohmann::json& j) {
  static constexpr std::string_view kKeys[] = {
      "num_layers", "model_dim",    "num_heads", "ffn_dim",
      "max_positions", "head_dropout", "vocab_size"};
  if (!j.is_object()) {
    raise(ErrorCode::InvalidArgument, "encoder config must be a JSON object");
  }
  check_keys(j, kKeys, "encoder config");
  EncoderConfig c;
  if (j.contains("num_layers")) c.num_layers = j.at("num_layers").get<int>();
  if (j.contains("model_dim")) c.model_dim = j.at("model_dim").get<int>();
  if (j.contains("num_heads")) c.num_heads = j.at("num_heads").get<int>();
  if (j.contains("ffn_dim")) c.ffn_dim = j.at("ffn_dim").get<int>();
  if (j.contains("max_positions")) {
    c.max_positions = j.at("max_positions").get<int>();
  }
  if (j.contains("head_dropout")) {
    c.head_dropout = j.at("head_dropout").get<double>();
  }
  if (j.contains("vocab_size")) c.vocab_size = j.at("vocab_size").get<int>();
  return c;
}

nlohmann::json train_config_to_json(const TrainConfig& config) {
  return json{{"lambda", config.lambda},
              {"learning_rate", config.learning_rate},
              {"fine_tune_learning_rate", config.fine_tune_learning_rate},
              {"batch_size", config.batch_size},
              {"max_epochs", config.max_epochs},
              {"patience", config.patience},
              {"beta1", config.beta1},
              {"beta2", config.beta2},
              {"epsilon", config.epsilon},
              {"seed", config.seed},
              {"cased_input", config.cased_input},
              {"ablation",
               {{"input_casing", config.ablation.input_casing},
                {"input_punct", config.ablation.input_punct}}}};
}

TrainConfig train_config_from_json(const nlohmann::json& j) {
  static constexpr std::string_view kKeys[] = {
      "lambda",     "learning_rate", "fine_tune_learning_rate",
      "batch_size", "max_epochs",    "patience",
      "beta1",      "beta2",         "epsilon",
      "seed",       "cased_input",   "ablation"};
  static constexpr std::string_view kAblationKeys[] = {"input_casing",
                                                       "input_punct"};
  if (!j.is_object()) {
    raise(ErrorCode::InvalidArgument, "train config must be a JSON object");
  }
  check_keys(j, kKeys, "train config");
  TrainConfig c;
  if (j.contains("lambda")) c.lambda = j.at("lambda").get<double>();
  if (j.contains("learning_rate")) {
    c.learning_rate = j.at("learning_rate").get<double>();
  }
  if (j.contains("fine_tune_learning_rate")) {
    c.fine_tune_learning_rate = j.at("fine_tune_learning_rate").get<double>();
  }
  if (j.contains("batch_size")) c.batch_size = j.at("batch_size").get<int>();
  if (j.contains("max_epochs")) c.max_epochs = j.at("max_epochs").get<int>();
  if (j.contains("patience")) c.patience = j.at("patience").get<int>();
  if (j.contains("beta1")) c.beta1 = j.at("beta1").get<double>();
  if (j.contains("beta2")) c.beta2 = j.at("beta2").get<double>();
  if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("cased_input")) {
    c.cased_input = j.at("cased_input").get<bool>();
  }
  if (j.contains("ablation")) {
    const auto& a = j.at("ablation");
    if (!a.is_object()) {
      raise(ErrorCode::InvalidArgument, "ablation must be a JSON object");
    }
    check_keys(a, kAblationKeys, "ablation config");
    if (a.contains("input_casing")) {
      c.ablation.input_casing = a.at("input_casing").get<bool>();
    }
    if (a.contains("input_punct")) {
      c.ablation.input_punct = a.at("input_punct").get<bool>();
    }
  }
  return c;
}

nlohmann::json split_spec_to_json(const SplitSpec& spec) {
  return json{{"train_ratio", spec.train_ratio},
              {"dev_ratio", spec.dev_ratio},
              {"test_ratio", spec.test_ratio},
              {"seed", spec.seed}};
}

SplitSpec split_spec_from_json(const nlohmann::json& j) {
  static constexpr std::string_view kKeys[] = {"train_ratio", "dev_ratio",
                                               "test_ratio", "seed"};
  if (!j.is_object()) {
    raise(ErrorCode::InvalidArgument, "split spec must be a JSON object");
  }
  check_keys(j, kKeys, "split spec");
  SplitSpec s;
  if (j.contains("train_ratio")) {
    s.train_ratio = require_number(j, "train_ratio", "split spec");
  }
  if (j.contains("dev_ratio")) {
    s.dev_ratio = require_number(j, "dev_ratio", "split spec");
  }
  if (j.contains("test_ratio")) {
    s.test_ratio = require_number(j, "test_ratio", "split spec");
  }
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  return s;
}

}  // namespace casepunct
