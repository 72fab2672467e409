#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "casepunct/corpus.hpp"
#include "casepunct/metrics.hpp"
#include "casepunct/model.hpp"
#include "casepunct/vocab.hpp"

namespace casepunct {

struct AblationFlags {
  bool input_casing = false;
  bool input_punct = false;

  bool operator==(const AblationFlags&) const = default;
};

struct TrainConfig {
  double lambda = 0.5;
  double learning_rate = 3e-4;
  double fine_tune_learning_rate = 1e-4;  // used by fine-tuning stages
  int batch_size = 16;                    // documents per step
  int max_epochs = 50;
  int patience = 10;  // epochs without dev improvement before stopping
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 0;
  bool cased_input = false;  // must match the vocabulary's cased flag
  AblationFlags ablation;

  void validate() const;
  bool operator==(const TrainConfig&) const = default;
};

struct StageRecord {
  std::string stage;      // "scratch" | "intermediate" | "target"
  std::string corpus_id;
  int epochs_run = 0;
  std::optional<double> dev_casing_f1;  // percent, absent without a dev set
  std::optional<double> dev_punct_f1;
};

struct Checkpoint {
  ModelParams params;
  TrainConfig train_config;
  std::uint64_t vocab_hash = 0;
  std::vector<StageRecord> lineage;
};

// Raw parameter blob (<prefix>.bin, float64 column-major) plus a JSON
// manifest (<prefix>.json) carrying tensor layout, configs and lineage.
// The round trip is bit-exact.
void save_checkpoint(const Checkpoint& ckpt, const std::string& prefix);
Checkpoint load_checkpoint(const std::string& prefix);

struct AdamState {
  std::vector<Eigen::MatrixXd> m;
  std::vector<Eigen::MatrixXd> v;
  std::int64_t step = 0;
};

AdamState make_adam_state(const ModelParams& params);
void adam_step(ModelParams& params, const Gradients& grads, AdamState& state,
               double learning_rate, double beta1, double beta2,
               double epsilon);

struct EpochLog {
  int epoch = 0;           // 1-based
  double train_loss = 0.0;  // mean joint loss over the epoch's batches
  std::optional<double> dev_casing_f1;
  std::optional<double> dev_punct_f1;
  std::optional<double> selection_metric;
  bool improved = false;
};

using EpochCallback = std::function<void(const EpochLog&)>;

struct TrainRun {
  std::string stage_name = "scratch";
  std::string corpus_id;
  EpochCallback on_epoch;
};

struct EvalPair {
  EvalReport casing;
  EvalReport punct;
};

// Word-level evaluation of a model over labeled documents; inputs are
// rendered with the given ablation flags before encoding.
EvalPair evaluate(const ModelParams& params, const Vocabulary& vocab,
                  std::span<const LabeledDocument> docs,
                  const AblationFlags& flags = {});

// Adam training on the joint loss with per-epoch dev selection: the dev
// metric is punctuation Macro F1 when lambda < 1 and casing Macro F1 at
// lambda == 1; the best-dev parameters are returned.
Checkpoint train(std::span<const LabeledDocument> train_docs,
                 std::span<const LabeledDocument> dev_docs,
                 const Vocabulary& vocab, const EncoderConfig& encoder,
                 const TrainConfig& config, const Checkpoint* init = nullptr,
                 const TrainRun& run = {});

struct SweepRow {
  std::string setting;
  std::vector<std::optional<double>> values;  // aligned with columns
};

struct SweepResult {
  std::string name;
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;
};

std::string render_sweep_table(const SweepResult& result);

// One train+test run per lambda; the lambda==1 row reports casing only and
// the lambda==0 row punctuation only.
SweepResult lambda_sweep(std::span<const LabeledDocument> train_docs,
                         std::span<const LabeledDocument> dev_docs,
                         std::span<const LabeledDocument> test_docs,
                         const Vocabulary& vocab, const EncoderConfig& encoder,
                         const TrainConfig& config,
                         std::span<const double> lambda_list);

struct TransferResult {
  SweepResult table;
  Checkpoint intermediate;
  std::vector<Checkpoint> fine_tuned;    // one per nonzero size, in order
  std::vector<Checkpoint> from_scratch;  // one per nonzero size, in order
};

// Two-stage low-resource protocol: stage 1 trains on the full source train
// split; for each size n, one arm fine-tunes that checkpoint on a nested
// n-document target subset and the other trains from scratch on the same
// subset; n == 0 evaluates the stage-1 checkpoint zero-shot (fine-tuned
// column only). Both arms are scored on the target test split.
TransferResult transfer_pipeline(const CorpusSplit& source,
                                 const CorpusSplit& target,
                                 std::span<const std::size_t> sizes,
                                 const Vocabulary& vocab,
                                 const EncoderConfig& encoder,
                                 const TrainConfig& config);

enum class AblationTask {
  Casing,  // lambda = 1; arms toggle punctuation in the input
  Punct,   // lambda = 0; arms toggle casing in the input
};

// Trains the two single-task arms on differently rendered inputs, each with
// a vocabulary induced from its own rendering, and reports test Macro F1.
SweepResult ablation_run(const CorpusSplit& corpus, AblationTask task,
                         int vocab_target_size, const EncoderConfig& encoder,
                         const TrainConfig& config);

}  // namespace casepunct
