#include <cstring>
#include <iomanip>
#include <sstream>

#include "casepunct/io.hpp"
#include "casepunct/train.hpp"

namespace casepunct {

namespace {

using nlohmann::json;

std::string hash_to_hex(std::uint64_t hash) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << hash;
  return os.str();
}

std::uint64_t hex_to_hash(const std::string& hex) {
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(hex, &used, 16);
  } catch (const std::exception&) {
    raise(ErrorCode::MalformedInput, "bad vocab_hash \"" + hex + "\"");
  }
  if (used != hex.size() || hex.empty()) {
    raise(ErrorCode::MalformedInput, "bad vocab_hash \"" + hex + "\"");
  }
  return value;
}

json lineage_to_json(const std::vector<StageRecord>& lineage) {
  json out = json::array();
  for (const auto& rec : lineage) {
    json j{{"stage", rec.stage},
           {"corpus_id", rec.corpus_id},
           {"epochs_run", rec.epochs_run}};
    j["dev_casing_f1"] =
        rec.dev_casing_f1 ? json(*rec.dev_casing_f1) : json(nullptr);
    j["dev_punct_f1"] =
        rec.dev_punct_f1 ? json(*rec.dev_punct_f1) : json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<StageRecord> lineage_from_json(const json& j) {
  if (!j.is_array()) {
    raise(ErrorCode::MalformedInput, "checkpoint lineage must be an array");
  }
  std::vector<StageRecord> lineage;
  for (const auto& item : j) {
    StageRecord rec;
    rec.stage = item.at("stage").get<std::string>();
    rec.corpus_id = item.at("corpus_id").get<std::string>();
    rec.epochs_run = item.at("epochs_run").get<int>();
    if (!item.at("dev_casing_f1").is_null()) {
      rec.dev_casing_f1 = item.at("dev_casing_f1").get<double>();
    }
    if (!item.at("dev_punct_f1").is_null()) {
      rec.dev_punct_f1 = item.at("dev_punct_f1").get<double>();
    }
    lineage.push_back(std::move(rec));
  }
  return lineage;
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::string& prefix) {
  std::string blob;
  json tensors = json::array();
  std::size_t offset = 0;
  ckpt.params.for_each_tensor(
      [&](const std::string& name, const Eigen::MatrixXd& m) {
        const std::size_t bytes =
            sizeof(double) * static_cast<std::size_t>(m.size());
        tensors.push_back({{"name", name},
                           {"rows", m.rows()},
                           {"cols", m.cols()},
                           {"offset", offset},
                           {"bytes", bytes}});
        blob.append(reinterpret_cast<const char*>(m.data()), bytes);
        offset += bytes;
      });

  json manifest{{"format_version", 1},
                {"dtype", "float64"},
                {"layout", "column_major"},
                {"tensors", std::move(tensors)},
                {"encoder_config", encoder_config_to_json(ckpt.params.config)},
                {"train_config", train_config_to_json(ckpt.train_config)},
                {"vocab_hash", hash_to_hex(ckpt.vocab_hash)},
                {"lineage", lineage_to_json(ckpt.lineage)}};

  write_file_atomic(prefix + ".bin", blob);
  write_file_atomic(prefix + ".json", manifest.dump(2) + "\n");
}

Checkpoint load_checkpoint(const std::string& prefix) {
  const std::string manifest_text = read_file(prefix + ".json");
  json manifest = json::parse(manifest_text, nullptr, false);
  if (manifest.is_discarded() || !manifest.is_object()) {
    raise(ErrorCode::MalformedInput,
          prefix + ".json is not a JSON checkpoint manifest");
  }
  if (!manifest.contains("format_version") ||
      manifest.at("format_version") != 1) {
    raise(ErrorCode::MalformedInput,
          prefix + ".json: unsupported format_version");
  }
  if (manifest.value("dtype", "") != "float64" ||
      manifest.value("layout", "") != "column_major") {
    raise(ErrorCode::MalformedInput,
          prefix + ".json: unsupported tensor encoding");
  }

  Checkpoint ckpt;
  const EncoderConfig config =
      encoder_config_from_json(manifest.at("encoder_config"));
  ckpt.params = ModelParams::shaped(config);
  ckpt.train_config = train_config_from_json(manifest.at("train_config"));
  ckpt.vocab_hash =
      hex_to_hash(manifest.at("vocab_hash").get<std::string>());
  ckpt.lineage = lineage_from_json(manifest.at("lineage"));

  const std::string blob = read_file(prefix + ".bin");
  const json& tensors = manifest.at("tensors");
  if (!tensors.is_array()) {
    raise(ErrorCode::MalformedInput, prefix + ".json: tensors must be a list");
  }

  std::size_t index = 0;
  std::size_t consumed = 0;
  ckpt.params.for_each_tensor([&](const std::string& name,
                                  Eigen::MatrixXd& m) {
    if (index >= tensors.size()) {
      raise(ErrorCode::MalformedInput,
            prefix + ".json: manifest is missing tensor " + name);
    }
    const json& t = tensors.at(index);
    if (t.value("name", "") != name ||
        t.value("rows", static_cast<Eigen::Index>(-1)) != m.rows() ||
        t.value("cols", static_cast<Eigen::Index>(-1)) != m.cols()) {
      raise(ErrorCode::MalformedInput,
            prefix + ".json: tensor " + std::to_string(index) +
                " does not match the declared encoder configuration");
    }
    const auto offset = t.at("offset").get<std::size_t>();
    const auto bytes = t.at("bytes").get<std::size_t>();
    if (bytes != sizeof(double) * static_cast<std::size_t>(m.size()) ||
        offset + bytes > blob.size()) {
      raise(ErrorCode::MalformedInput,
            prefix + ".bin: tensor " + name + " falls outside the blob");
    }
    std::memcpy(m.data(), blob.data() + offset, bytes);
    consumed += bytes;
    ++index;
  });
  if (index != tensors.size() || consumed != blob.size()) {
    raise(ErrorCode::MalformedInput,
          prefix + ".bin does not match its manifest");
  }
  return ckpt;
}

}  // namespace casepunct
