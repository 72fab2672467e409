#pragma once

#include <cstring>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "casepunct/document.hpp"
#include "casepunct/model.hpp"
#include "casepunct/vocab.hpp"

namespace casepunct::testing {

inline std::vector<std::pair<std::string, const Eigen::MatrixXd*>>
collect_tensors(const ModelParams& params) {
  std::vector<std::pair<std::string, const Eigen::MatrixXd*>> out;
  params.for_each_tensor([&](const std::string& name,
                             const Eigen::MatrixXd& m) {
    out.emplace_back(name, &m);
  });
  return out;
}

// Bitwise equality of every tensor; the version counter is deliberately
// ignored because it tracks update history, not values.
inline bool params_equal(const ModelParams& a, const ModelParams& b) {
  const auto ta = collect_tensors(a);
  const auto tb = collect_tensors(b);
  if (ta.size() != tb.size()) return false;
  for (size_t i = 0; i < ta.size(); ++i) {
    if (ta[i].first != tb[i].first) return false;
    const auto& ma = *ta[i].second;
    const auto& mb = *tb[i].second;
    if (ma.rows() != mb.rows() || ma.cols() != mb.cols()) return false;
    const size_t bytes = static_cast<size_t>(ma.size()) * sizeof(double);
    if (bytes != 0 && std::memcmp(ma.data(), mb.data(), bytes) != 0) {
      return false;
    }
  }
  return true;
}

inline Vocabulary make_vocab(std::vector<std::string> extra, bool cased) {
  Vocabulary v;
  v.cased = cased;
  v.tokens = {"[PAD]", "[UNK]", "[BOS]"};
  for (auto& t : extra) v.tokens.push_back(std::move(t));
  for (size_t i = 0; i < v.tokens.size(); ++i) {
    v.index[v.tokens[i]] = static_cast<int>(i);
  }
  return v;
}

struct Accuracy {
  double casing = 0.0;
  double punct = 0.0;
};

inline Accuracy word_accuracy(const ModelParams& params,
                              const Vocabulary& vocab,
                              std::span<const LabeledDocument> docs,
                              size_t max_len) {
  size_t total = 0, casing_ok = 0, punct_ok = 0;
  for (const auto& doc : docs) {
    if (doc.size() == 0) continue;
    const Prediction pred = predict(params, doc.words, vocab, max_len);
    for (size_t i = 0; i < doc.size(); ++i) {
      ++total;
      if (pred.casing[i] == doc.casing[i]) ++casing_ok;
      if (pred.punct[i] == doc.punct[i]) ++punct_ok;
    }
  }
  Accuracy acc;
  if (total > 0) {
    acc.casing = static_cast<double>(casing_ok) / static_cast<double>(total);
    acc.punct = static_cast<double>(punct_ok) / static_cast<double>(total);
  }
  return acc;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    auto base = std::filesystem::temp_directory_path();
    for (int attempt = 0; attempt < 64; ++attempt) {
      auto candidate = base / (tag + "-" + std::to_string(rd()));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
    throw std::runtime_error("could not create temp dir for " + tag);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace casepunct::testing
