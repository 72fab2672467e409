#include "casepunct/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "casepunct/errors.hpp"
#include "casepunct/rng.hpp"

namespace casepunct {

namespace {

struct EncodedDoc {
  std::vector<Encoding> chunks;
  std::vector<AlignedLabels> labels;
};

Batch assemble_batch(const std::vector<EncodedDoc>& encoded,
                     std::span<const std::size_t> doc_indices) {
  Batch batch;
  for (const std::size_t i : doc_indices) {
    const auto& doc = encoded[i];
    for (std::size_t c = 0; c < doc.chunks.size(); ++c) {
      batch.chunks.push_back(doc.chunks[c]);
      batch.labels.push_back(doc.labels[c]);
      batch.chunk_doc.push_back(batch.num_docs);
    }
    ++batch.num_docs;
  }
  return batch;
}

std::string format_setting(double value) {
  std::ostringstream os;
  os << value;
  return os.str();
}

}  // namespace

void TrainConfig::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    raise(ErrorCode::InvalidArgument, "lambda must lie in [0, 1]");
  }
  if (!(learning_rate > 0.0) || !(fine_tune_learning_rate > 0.0)) {
    raise(ErrorCode::InvalidArgument, "learning rates must be positive");
  }
  if (batch_size < 1) {
    raise(ErrorCode::InvalidArgument, "batch_size must be at least 1");
  }
  if (max_epochs < 0) {
    raise(ErrorCode::InvalidArgument, "max_epochs must be non-negative");
  }
  if (patience < 1) {
    raise(ErrorCode::InvalidArgument, "patience must be at least 1");
  }
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    raise(ErrorCode::InvalidArgument, "Adam betas must lie in [0, 1)");
  }
  if (!(epsilon > 0.0)) {
    raise(ErrorCode::InvalidArgument, "Adam epsilon must be positive");
  }
}

AdamState make_adam_state(const ModelParams& params) {
  AdamState state;
  params.for_each_tensor(
      [&state](const std::string&, const Eigen::MatrixXd& m) {
        state.m.push_back(Eigen::MatrixXd::Zero(m.rows(), m.cols()));
        state.v.push_back(Eigen::MatrixXd::Zero(m.rows(), m.cols()));
      });
  return state;
}

void adam_step(ModelParams& params, const Gradients& grads, AdamState& state,
               double learning_rate, double beta1, double beta2,
               double epsilon) {
  std::vector<const Eigen::MatrixXd*> grad_tensors;
  grads.for_each_tensor(
      [&grad_tensors](const std::string&, const Eigen::MatrixXd& m) {
        grad_tensors.push_back(&m);
      });
  if (grad_tensors.size() != state.m.size()) {
    raise(ErrorCode::ShapeMismatch,
          "optimizer state does not match the gradient tensor count");
  }

  ++state.step;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.step));

  std::size_t i = 0;
  params.for_each_tensor([&](const std::string& name, Eigen::MatrixXd& p) {
    const Eigen::MatrixXd& g = *grad_tensors[i];
    if (g.rows() != p.rows() || g.cols() != p.cols()) {
      raise(ErrorCode::ShapeMismatch,
            "gradient shape for " + name + " does not match the parameter");
    }
    Eigen::MatrixXd& m = state.m[i];
    Eigen::MatrixXd& v = state.v[i];
    m = beta1 * m + (1.0 - beta1) * g;
    v = beta2 * v + (1.0 - beta2) * g.cwiseProduct(g);
    p.array() -=
        learning_rate * (m.array() / bc1) / ((v.array() / bc2).sqrt() + epsilon);
    ++i;
  });
  params.bump_version();
}

EvalPair evaluate(const ModelParams& params, const Vocabulary& vocab,
                  std::span<const LabeledDocument> docs,
                  const AblationFlags& flags) {
  ConfusionMatrix cm_casing(kNumCasingLabels);
  ConfusionMatrix cm_punct(kNumPunctLabels);
  const auto max_len = static_cast<std::size_t>(params.config.max_positions);
  for (const auto& doc : docs) {
    if (doc.empty()) continue;
    const auto words =
        ablated_words(doc, flags.input_casing, flags.input_punct);
    const Prediction pred = predict(params, words, vocab, max_len);
    for (std::size_t i = 0; i < doc.size(); ++i) {
      cm_casing.add(static_cast<int>(doc.casing[i]),
                    static_cast<int>(pred.casing[i]));
      cm_punct.add(static_cast<int>(doc.punct[i]),
                   static_cast<int>(pred.punct[i]));
    }
  }
  return EvalPair{report_casing(cm_casing), report_punct(cm_punct)};
}

Checkpoint train(std::span<const LabeledDocument> train_docs,
                 std::span<const LabeledDocument> dev_docs,
                 const Vocabulary& vocab, const EncoderConfig& encoder,
                 const TrainConfig& config, const Checkpoint* init,
                 const TrainRun& run) {
  config.validate();
  if (vocab.cased != config.cased_input) {
    raise(ErrorCode::VocabularyMismatch,
          std::string("configuration declares ") +
              (config.cased_input ? "cased" : "uncased") +
              " input but the vocabulary is " +
              (vocab.cased ? "cased" : "uncased"));
  }
  if (config.ablation.input_casing && !vocab.cased) {
    raise(ErrorCode::VocabularyMismatch,
          "casing in the input requires a cased vocabulary");
  }

  std::vector<const LabeledDocument*> usable;
  for (const auto& doc : train_docs) {
    if (!doc.empty()) usable.push_back(&doc);
  }
  if (usable.empty()) {
    raise(ErrorCode::EmptyTrainSet, "no non-empty training documents");
  }

  EncoderConfig enc_cfg = init ? init->params.config : encoder;
  enc_cfg.vocab_size = vocab.size();
  if (init) {
    if (init->vocab_hash != vocab.hash()) {
      raise(ErrorCode::VocabularyMismatch,
            "checkpoint was trained with a different vocabulary");
    }
    if (init->params.config.vocab_size != vocab.size()) {
      raise(ErrorCode::VocabularyMismatch,
            "checkpoint embedding table does not match the vocabulary size");
    }
  }

  ModelParams params =
      init ? init->params : ModelParams::init(enc_cfg, config.seed);
  const auto max_len = static_cast<std::size_t>(enc_cfg.max_positions);

  std::vector<EncodedDoc> encoded(usable.size());
  for (std::size_t i = 0; i < usable.size(); ++i) {
    const auto words = ablated_words(*usable[i], config.ablation.input_casing,
                                     config.ablation.input_punct);
    encoded[i].chunks = encode(words, vocab, max_len);
    encoded[i].labels = align_labels(*usable[i], encoded[i].chunks);
  }

  bool have_dev = false;
  for (const auto& doc : dev_docs) {
    if (!doc.empty()) {
      have_dev = true;
      break;
    }
  }

  AdamState adam = make_adam_state(params);
  ModelParams best = params;
  double best_metric = -std::numeric_limits<double>::infinity();
  std::optional<double> best_casing_f1;
  std::optional<double> best_punct_f1;
  int since_improve = 0;
  int epochs_run = 0;
  const std::uint64_t shuffle_base = mix_seed(config.seed, "epoch_shuffle");
  const std::uint64_t dropout_base = mix_seed(config.seed, "dropout");
  std::uint64_t global_step = 0;
  const auto batch_size = static_cast<std::size_t>(config.batch_size);

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    ++epochs_run;
    const auto order = shuffled_indices(
        usable.size(), mix_seed(shuffle_base, static_cast<std::uint64_t>(epoch)));
    double loss_sum = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      const std::size_t count = std::min(batch_size, order.size() - start);
      const Batch batch = assemble_batch(
          encoded, std::span<const std::size_t>(order.data() + start, count));
      const Activations acts = forward(params, batch.chunks, true,
                                       mix_seed(dropout_base, global_step));
      const JointLoss loss = joint_loss(acts, batch, config.lambda);
      const Gradients grads = backward(params, batch, config.lambda, acts);
      adam_step(params, grads, adam, config.learning_rate, config.beta1,
                config.beta2, config.epsilon);
      loss_sum += loss.joint;
      ++batches;
      ++global_step;
    }

    EpochLog log;
    log.epoch = epoch;
    log.train_loss = loss_sum / static_cast<double>(batches);
    if (have_dev) {
      const EvalPair dev = evaluate(params, vocab, dev_docs, config.ablation);
      const double metric =
          config.lambda == 1.0 ? dev.casing.macro_f1 : dev.punct.macro_f1;
      log.dev_casing_f1 = dev.casing.macro_f1;
      log.dev_punct_f1 = dev.punct.macro_f1;
      log.selection_metric = metric;
      if (metric > best_metric) {
        best_metric = metric;
        best = params;
        best_casing_f1 = dev.casing.macro_f1;
        best_punct_f1 = dev.punct.macro_f1;
        since_improve = 0;
        log.improved = true;
      } else {
        ++since_improve;
      }
      if (run.on_epoch) run.on_epoch(log);
      if (since_improve >= config.patience) break;
    } else {
      best = params;
      log.improved = true;
      if (run.on_epoch) run.on_epoch(log);
    }
  }

  Checkpoint out;
  out.params = std::move(best);
  out.train_config = config;
  out.vocab_hash = vocab.hash();
  if (init) out.lineage = init->lineage;

  StageRecord record;
  record.stage = run.stage_name;
  record.corpus_id = run.corpus_id;
  record.epochs_run = epochs_run;
  if (have_dev && !best_casing_f1.has_value()) {
    const EvalPair dev = evaluate(out.params, vocab, dev_docs, config.ablation);
    best_casing_f1 = dev.casing.macro_f1;
    best_punct_f1 = dev.punct.macro_f1;
  }
  record.dev_casing_f1 = best_casing_f1;
  record.dev_punct_f1 = best_punct_f1;
  out.lineage.push_back(std::move(record));
  return out;
}

SweepResult lambda_sweep(std::span<const LabeledDocument> train_docs,
                         std::span<const LabeledDocument> dev_docs,
                         std::span<const LabeledDocument> test_docs,
                         const Vocabulary& vocab, const EncoderConfig& encoder,
                         const TrainConfig& config,
                         std::span<const double> lambda_list) {
  if (lambda_list.empty()) {
    raise(ErrorCode::InvalidArgument, "lambda list is empty");
  }
  for (std::size_t i = 0; i < lambda_list.size(); ++i) {
    if (!(lambda_list[i] >= 0.0 && lambda_list[i] <= 1.0)) {
      raise(ErrorCode::InvalidArgument, "lambda values must lie in [0, 1]");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (lambda_list[i] == lambda_list[j]) {
        raise(ErrorCode::DistinctSettings,
              "duplicate lambda " + format_setting(lambda_list[i]));
      }
    }
  }

  SweepResult result;
  result.name = "lambda_sweep";
  result.columns = {"casing_macro_f1", "punct_macro_f1"};
  const std::uint64_t arm_base = mix_seed(config.seed, "sweep_arm");
  for (std::size_t i = 0; i < lambda_list.size(); ++i) {
    const double lambda = lambda_list[i];
    TrainConfig arm = config;
    arm.lambda = lambda;
    arm.seed = mix_seed(arm_base, static_cast<std::uint64_t>(i));
    TrainRun run;
    run.stage_name = "scratch";
    run.corpus_id = "sweep";
    const Checkpoint ckpt =
        train(train_docs, dev_docs, vocab, encoder, arm, nullptr, run);
    const EvalPair test =
        evaluate(ckpt.params, vocab, test_docs, config.ablation);
    SweepRow row;
    row.setting = format_setting(lambda);
    row.values.push_back(lambda == 0.0
                             ? std::nullopt
                             : std::optional<double>(test.casing.macro_f1));
    row.values.push_back(lambda == 1.0
                             ? std::nullopt
                             : std::optional<double>(test.punct.macro_f1));
    result.rows.push_back(std::move(row));
  }
  return result;
}

TransferResult transfer_pipeline(const CorpusSplit& source,
                                 const CorpusSplit& target,
                                 std::span<const std::size_t> sizes,
                                 const Vocabulary& vocab,
                                 const EncoderConfig& encoder,
                                 const TrainConfig& config) {
  if (sizes.empty()) {
    raise(ErrorCode::InvalidArgument, "transfer size list is empty");
  }
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) {
      raise(ErrorCode::InvalidArgument,
            "transfer sizes must be strictly ascending");
    }
  }

  TrainConfig stage1_cfg = config;
  stage1_cfg.lambda = 0.5;
  stage1_cfg.seed = mix_seed(config.seed, "stage1");
  TrainRun stage1_run;
  stage1_run.stage_name = "intermediate";
  stage1_run.corpus_id = "source";
  TransferResult result;
  result.intermediate = train(source.train, source.dev, vocab, encoder,
                              stage1_cfg, nullptr, stage1_run);

  result.table.name = "transfer";
  result.table.columns = {"with_intermediate_casing_f1",
                          "with_intermediate_punct_f1",
                          "from_scratch_casing_f1", "from_scratch_punct_f1"};

  const std::uint64_t subset_seed = mix_seed(config.seed, "target_subset");
  const std::uint64_t fine_tune_base = mix_seed(config.seed, "fine_tune");
  const std::uint64_t scratch_base = mix_seed(config.seed, "from_scratch");

  for (const std::size_t n : sizes) {
    SweepRow row;
    row.setting = std::to_string(n);
    if (n == 0) {
      const EvalPair zero = evaluate(result.intermediate.params, vocab,
                                     target.test, config.ablation);
      row.values = {zero.casing.macro_f1, zero.punct.macro_f1, std::nullopt,
                    std::nullopt};
      result.table.rows.push_back(std::move(row));
      continue;
    }

    const auto sub = subset(target.train, n, subset_seed);

    TrainConfig with_cfg = config;
    with_cfg.lambda = 0.5;
    with_cfg.learning_rate = config.fine_tune_learning_rate;
    with_cfg.seed = mix_seed(fine_tune_base, static_cast<std::uint64_t>(n));
    TrainRun with_run;
    with_run.stage_name = "target";
    with_run.corpus_id = "target";
    Checkpoint with_ckpt = train(sub, target.dev, vocab, encoder, with_cfg,
                                 &result.intermediate, with_run);

    TrainConfig scratch_cfg = config;
    scratch_cfg.lambda = 0.5;
    scratch_cfg.seed = mix_seed(scratch_base, static_cast<std::uint64_t>(n));
    TrainRun scratch_run;
    scratch_run.stage_name = "target";
    scratch_run.corpus_id = "target";
    Checkpoint scratch_ckpt = train(sub, target.dev, vocab, encoder,
                                    scratch_cfg, nullptr, scratch_run);

    const EvalPair with_eval =
        evaluate(with_ckpt.params, vocab, target.test, config.ablation);
    const EvalPair scratch_eval =
        evaluate(scratch_ckpt.params, vocab, target.test, config.ablation);
    row.values = {with_eval.casing.macro_f1, with_eval.punct.macro_f1,
                  scratch_eval.casing.macro_f1, scratch_eval.punct.macro_f1};
    result.table.rows.push_back(std::move(row));
    result.fine_tuned.push_back(std::move(with_ckpt));
    result.from_scratch.push_back(std::move(scratch_ckpt));
  }
  return result;
}

SweepResult ablation_run(const CorpusSplit& corpus, AblationTask task,
                         int vocab_target_size, const EncoderConfig& encoder,
                         const TrainConfig& config) {
  if (task == AblationTask::Punct && !config.cased_input) {
    raise(ErrorCode::VocabularyMismatch,
          "casing in the input requires a cased vocabulary");
  }

  struct Arm {
    std::string setting;
    AblationFlags flags;
  };
  std::vector<Arm> arms;
  if (task == AblationTask::Casing) {
    arms.push_back({"with_punct_input", AblationFlags{false, true}});
    arms.push_back({"without_punct_input", AblationFlags{false, false}});
  } else {
    arms.push_back({"with_casing_input", AblationFlags{true, false}});
    arms.push_back({"without_casing_input", AblationFlags{false, false}});
  }

  SweepResult result;
  result.name = task == AblationTask::Casing ? "ablation_casing_task"
                                             : "ablation_punct_task";
  result.columns = {"casing_macro_f1", "punct_macro_f1"};
  const double lambda = task == AblationTask::Casing ? 1.0 : 0.0;
  const std::uint64_t arm_base = mix_seed(config.seed, "ablation_arm");

  for (std::size_t i = 0; i < arms.size(); ++i) {
    const Arm& arm = arms[i];
    std::vector<std::vector<std::string>> rendered;
    rendered.reserve(corpus.train.size());
    for (const auto& doc : corpus.train) {
      rendered.push_back(
          ablated_words(doc, arm.flags.input_casing, arm.flags.input_punct));
    }
    const Vocabulary vocab = build_vocab_from_words(
        rendered, vocab_target_size, arm.flags.input_casing, 1);

    TrainConfig arm_cfg = config;
    arm_cfg.lambda = lambda;
    arm_cfg.cased_input = vocab.cased;
    arm_cfg.ablation = arm.flags;
    arm_cfg.seed = mix_seed(arm_base, static_cast<std::uint64_t>(i));
    TrainRun run;
    run.stage_name = "scratch";
    run.corpus_id = "ablation";
    const Checkpoint ckpt =
        train(corpus.train, corpus.dev, vocab, encoder, arm_cfg, nullptr, run);
    const EvalPair test = evaluate(ckpt.params, vocab, corpus.test, arm.flags);

    SweepRow row;
    row.setting = arm.setting;
    row.values.push_back(task == AblationTask::Casing
                             ? std::optional<double>(test.casing.macro_f1)
                             : std::nullopt);
    row.values.push_back(task == AblationTask::Punct
                             ? std::optional<double>(test.punct.macro_f1)
                             : std::nullopt);
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string render_sweep_table(const SweepResult& result) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header;
  header.push_back("setting");
  for (const auto& c : result.columns) header.push_back(c);
  cells.push_back(header);
  for (const auto& row : result.rows) {
    std::vector<std::string> line;
    line.push_back(row.setting);
    for (const auto& v : row.values) {
      line.push_back(v.has_value() ? format_percent(*v) : "-");
    }
    cells.push_back(std::move(line));
  }

  std::vector<std::size_t> widths(cells.front().size(), 0);
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      widths[i] = std::max(widths[i], line[i].size());
    }
  }

  std::ostringstream os;
  os << result.name << "\n";
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i > 0) os << "  ";
      os << line[i];
      os << std::string(widths[i] - line[i].size(), ' ');
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace casepunct
