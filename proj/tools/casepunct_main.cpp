#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "casepunct/corpus.hpp"
#include "casepunct/io.hpp"
#include "casepunct/model.hpp"
#include "casepunct/train.hpp"
#include "casepunct/vocab.hpp"

namespace {

using casepunct::ErrorCode;
using nlohmann::json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidRatios:
    case ErrorCode::DistinctSettings:
    case ErrorCode::TargetTooSmall:
      return 1;  // usage / configuration
    case ErrorCode::MalformedInput:
    case ErrorCode::EmptyCorpus:
    case ErrorCode::TooFewDocuments:
    case ErrorCode::EmptyTrainSet:
    case ErrorCode::WordTooLong:
    case ErrorCode::UnknownLabel:
    case ErrorCode::VocabularyMismatch:
    case ErrorCode::EmptyMatrix:
    case ErrorCode::SchemaMismatch:
      return 2;  // data
    default:
      return 3;  // internal
  }
}

void emit_error(const std::string& code_name, const std::string& message) {
  const json record{{"error", {{"code", code_name}, {"message", message}}}};
  std::cerr << record.dump() << "\n";
}

// All tunables of a run; every subcommand writes the resolved copy beside
// its outputs so a stage can be reproduced from the output directory alone.
struct RunConfig {
  std::uint64_t seed = 0;
  casepunct::SplitSpec split;
  casepunct::EncoderConfig encoder;
  casepunct::TrainConfig train;
  int vocab_target_size = 512;
  long long vocab_min_freq = 1;
};

json run_config_to_json(const RunConfig& rc) {
  return json{{"seed", rc.seed},
              {"split", casepunct::split_spec_to_json(rc.split)},
              {"encoder", casepunct::encoder_config_to_json(rc.encoder)},
              {"train", casepunct::train_config_to_json(rc.train)},
              {"tokenizer",
               {{"target_size", rc.vocab_target_size},
                {"cased", rc.train.cased_input},
                {"min_freq", rc.vocab_min_freq}}}};
}

RunConfig load_run_config(const std::string& path) {
  RunConfig rc;
  if (path.empty()) return rc;
  static constexpr std::string_view kKeys[] = {"seed", "split", "encoder",
                                               "train", "tokenizer"};
  static constexpr std::string_view kTokKeys[] = {"target_size", "cased",
                                                  "min_freq"};
  json j = json::parse(casepunct::read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    casepunct::raise(ErrorCode::InvalidArgument,
                     path + " is not a JSON configuration object");
  }
  casepunct::check_keys(j, kKeys, "config " + path);
  if (j.contains("seed")) rc.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("split")) {
    rc.split = casepunct::split_spec_from_json(j.at("split"));
  }
  if (j.contains("encoder")) {
    rc.encoder = casepunct::encoder_config_from_json(j.at("encoder"));
  }
  if (j.contains("train")) {
    rc.train = casepunct::train_config_from_json(j.at("train"));
  }
  if (j.contains("tokenizer")) {
    const auto& t = j.at("tokenizer");
    if (!t.is_object()) {
      casepunct::raise(ErrorCode::InvalidArgument,
                       "tokenizer config must be a JSON object");
    }
    casepunct::check_keys(t, kTokKeys, "tokenizer config");
    if (t.contains("target_size")) {
      rc.vocab_target_size = t.at("target_size").get<int>();
    }
    if (t.contains("cased")) {
      rc.train.cased_input = t.at("cased").get<bool>();
    }
    if (t.contains("min_freq")) {
      rc.vocab_min_freq = t.at("min_freq").get<long long>();
    }
  }
  return rc;
}

// Flag values shared by the training-style subcommands; only options the
// user actually passed override the config file.
struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> lambda;
  std::optional<double> learning_rate;
  std::optional<int> batch_size;
  std::optional<int> max_epochs;
  std::optional<int> patience;
  std::optional<int> vocab_size;
  std::optional<bool> cased;
  std::optional<int> num_layers;
  std::optional<int> model_dim;
  std::optional<int> num_heads;
  std::optional<int> ffn_dim;
  std::optional<int> max_positions;
  std::optional<double> head_dropout;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON configuration file");
    cmd->add_option("--seed", seed, "master random seed");
    cmd->add_option("--lambda", lambda, "joint-loss weight in [0, 1]");
    cmd->add_option("--lr", learning_rate, "Adam learning rate");
    cmd->add_option("--batch-size", batch_size, "documents per batch");
    cmd->add_option("--epochs", max_epochs, "maximum training epochs");
    cmd->add_option("--patience", patience, "early-stop patience (epochs)");
    cmd->add_option("--vocab-size", vocab_size, "subword vocabulary target");
    cmd->add_option("--cased", cased, "preserve case in vocabulary/input");
    cmd->add_option("--layers", num_layers, "encoder layers");
    cmd->add_option("--dim", model_dim, "encoder model dimension");
    cmd->add_option("--heads", num_heads, "attention heads");
    cmd->add_option("--ffn-dim", ffn_dim, "feed-forward dimension");
    cmd->add_option("--max-positions", max_positions,
                    "maximum tokens per chunk");
    cmd->add_option("--dropout", head_dropout, "task-head dropout");
  }

  RunConfig resolve() const {
    RunConfig rc = load_run_config(config_path);
    if (seed) rc.seed = *seed;
    rc.split.seed = rc.seed;
    rc.train.seed = rc.seed;
    if (lambda) rc.train.lambda = *lambda;
    if (learning_rate) rc.train.learning_rate = *learning_rate;
    if (batch_size) rc.train.batch_size = *batch_size;
    if (max_epochs) rc.train.max_epochs = *max_epochs;
    if (patience) rc.train.patience = *patience;
    if (vocab_size) rc.vocab_target_size = *vocab_size;
    if (cased) rc.train.cased_input = *cased;
    if (num_layers) rc.encoder.num_layers = *num_layers;
    if (model_dim) rc.encoder.model_dim = *model_dim;
    if (num_heads) rc.encoder.num_heads = *num_heads;
    if (ffn_dim) rc.encoder.ffn_dim = *ffn_dim;
    if (max_positions) rc.encoder.max_positions = *max_positions;
    if (head_dropout) rc.encoder.head_dropout = *head_dropout;
    return rc;
  }
};

std::filesystem::path prepare_out_dir(const std::string& out_dir) {
  std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_resolved_config(const std::filesystem::path& dir,
                           const std::string& command, const RunConfig& rc) {
  json j = run_config_to_json(rc);
  j["command"] = command;
  casepunct::write_file_atomic((dir / "resolved_config.json").string(),
                               j.dump(2) + "\n");
}

void write_json(const std::filesystem::path& path, const json& j) {
  casepunct::write_file_atomic(path.string(), j.dump(2) + "\n");
}

casepunct::Vocabulary load_vocab(const std::string& path) {
  return casepunct::Vocabulary::from_json(casepunct::read_file(path));
}

casepunct::EpochCallback jsonl_logger(std::ofstream& out,
                                      const std::string& stage) {
  return [&out, stage](const casepunct::EpochLog& log) {
    json j{{"event", "epoch"},
           {"stage", stage},
           {"epoch", log.epoch},
           {"train_loss", log.train_loss},
           {"improved", log.improved}};
    j["dev_casing_f1"] =
        log.dev_casing_f1 ? json(*log.dev_casing_f1) : json(nullptr);
    j["dev_punct_f1"] =
        log.dev_punct_f1 ? json(*log.dev_punct_f1) : json(nullptr);
    j["selection_metric"] =
        log.selection_metric ? json(*log.selection_metric) : json(nullptr);
    out << j.dump() << "\n";
    out.flush();
  };
}

std::string render_stats_tables(const casepunct::CorpusStats& stats) {
  std::string out;
  out += "label counts (" + std::to_string(stats.total_words) + " words)\n";
  const auto row = [&out](std::string_view label, long long count,
                          double percent) {
    std::string line(label);
    line.resize(14, ' ');
    line += std::to_string(count);
    line.resize(28, ' ');
    out += line + casepunct::format_percent(percent) + "%\n";
  };
  for (int i = 0; i < casepunct::kNumCasingLabels; ++i) {
    const auto& c = stats.casing[static_cast<std::size_t>(i)];
    row(casepunct::kCasingNames[static_cast<std::size_t>(i)], c.count,
        c.percent);
  }
  for (int i = 0; i < casepunct::kNumPunctLabels; ++i) {
    const auto& p = stats.punct[static_cast<std::size_t>(i)];
    row(casepunct::kPunctNames[static_cast<std::size_t>(i)], p.count,
        p.percent);
  }
  out += "\nnext-word casing distribution per punctuation label\n";
  for (int i = 0; i < casepunct::kNumPunctLabels; ++i) {
    const auto& r = stats.joint[static_cast<std::size_t>(i)];
    std::string line(casepunct::kPunctNames[static_cast<std::size_t>(i)]);
    line.resize(14, ' ');
    if (r.support == 0) {
      line += "(no support)";
    } else {
      for (int c = 0; c < casepunct::kNumCasingLabels; ++c) {
        line += std::string(casepunct::kCasingNames[static_cast<std::size_t>(c)]);
        line += "=";
        line += casepunct::format_percent(
            100.0 * r.p[static_cast<std::size_t>(c)]);
        line += "% ";
      }
      line += "support=" + std::to_string(r.support);
    }
    out += line + "\n";
  }
  return out;
}

void save_eval_reports(const std::filesystem::path& dir,
                       const casepunct::EvalPair& pair) {
  write_json(dir / "report_casing.json",
             casepunct::report_to_json(pair.casing));
  write_json(dir / "report_punct.json", casepunct::report_to_json(pair.punct));
  casepunct::write_file_atomic(
      (dir / "report_casing.txt").string(),
      casepunct::render_report_table(pair.casing));
  casepunct::write_file_atomic((dir / "report_punct.txt").string(),
                               casepunct::render_report_table(pair.punct));
  std::cout << casepunct::render_report_table(pair.casing) << "\n"
            << casepunct::render_report_table(pair.punct);
}

void cmd_prepare(const CommonFlags& flags, const std::string& in_path,
                 const std::string& out_dir) {
  const RunConfig rc = flags.resolve();
  const auto dir = prepare_out_dir(out_dir);

  const auto raw = casepunct::load_raw_jsonl(in_path);
  std::vector<casepunct::LabeledDocument> docs;
  docs.reserve(raw.size());
  for (const auto& r : raw) {
    docs.push_back(casepunct::extract_labels(r.text, r.id));
  }
  casepunct::save_labeled_jsonl(docs, (dir / "labeled.jsonl").string());

  const auto split = casepunct::split_corpus(docs, rc.split);
  casepunct::save_labeled_jsonl(split.train, (dir / "train.jsonl").string());
  casepunct::save_labeled_jsonl(split.dev, (dir / "dev.jsonl").string());
  casepunct::save_labeled_jsonl(split.test, (dir / "test.jsonl").string());
  write_resolved_config(dir, "prepare", rc);

  const json summary{{"documents", docs.size()},
                     {"train", split.train.size()},
                     {"dev", split.dev.size()},
                     {"test", split.test.size()}};
  std::cout << summary.dump() << "\n";
}

void cmd_stats(const CommonFlags& flags, const std::string& in_path,
               const std::string& out_dir) {
  const RunConfig rc = flags.resolve();
  const auto dir = prepare_out_dir(out_dir);
  const auto docs = casepunct::load_labeled_jsonl(in_path);
  const auto stats = casepunct::compute_stats(docs);
  write_json(dir / "stats.json", casepunct::stats_to_json(stats));
  const std::string tables = render_stats_tables(stats);
  casepunct::write_file_atomic((dir / "stats.txt").string(), tables);
  write_resolved_config(dir, "stats", rc);
  std::cout << tables;
}

void cmd_train(const CommonFlags& flags, const std::string& train_path,
               const std::string& dev_path, const std::string& test_path,
               const std::string& vocab_path, const std::string& init_prefix,
               const std::string& stage, const std::string& out_dir) {
  const RunConfig rc = flags.resolve();
  const auto dir = prepare_out_dir(out_dir);

  const auto train_docs = casepunct::load_labeled_jsonl(train_path);
  const auto dev_docs =
      dev_path.empty() ? std::vector<casepunct::LabeledDocument>{}
                       : casepunct::load_labeled_jsonl(dev_path);

  casepunct::Vocabulary vocab =
      vocab_path.empty()
          ? casepunct::build_vocab(
                train_docs, static_cast<std::size_t>(rc.vocab_target_size),
                rc.train.cased_input, rc.vocab_min_freq)
          : load_vocab(vocab_path);
  casepunct::write_file_atomic((dir / "vocab.json").string(), vocab.to_json());

  std::optional<casepunct::Checkpoint> init;
  if (!init_prefix.empty()) {
    init = casepunct::load_checkpoint(init_prefix);
  }

  std::ofstream log_stream((dir / "train_log.jsonl").string(),
                           std::ios::trunc);
  casepunct::TrainRun run;
  run.stage_name = stage;
  run.corpus_id = train_path;
  run.on_epoch = jsonl_logger(log_stream, stage);

  const casepunct::Checkpoint ckpt =
      casepunct::train(train_docs, dev_docs, vocab, rc.encoder, rc.train,
                       init ? &*init : nullptr, run);
  casepunct::save_checkpoint(ckpt, (dir / "checkpoint").string());
  write_resolved_config(dir, "train", rc);

  if (!test_path.empty()) {
    const auto test_docs = casepunct::load_labeled_jsonl(test_path);
    const auto pair = casepunct::evaluate(ckpt.params, vocab, test_docs,
                                          rc.train.ablation);
    save_eval_reports(dir, pair);
  }
}

void cmd_sweep(const CommonFlags& flags, const std::string& train_path,
               const std::string& dev_path, const std::string& test_path,
               std::vector<double> lambdas, const std::string& out_dir) {
  const RunConfig rc = flags.resolve();
  const auto dir = prepare_out_dir(out_dir);
  const auto train_docs = casepunct::load_labeled_jsonl(train_path);
  const auto dev_docs = casepunct::load_labeled_jsonl(dev_path);
  const auto test_docs = casepunct::load_labeled_jsonl(test_path);

  const casepunct::Vocabulary vocab = casepunct::build_vocab(
      train_docs, static_cast<std::size_t>(rc.vocab_target_size),
      rc.train.cased_input, rc.vocab_min_freq);
  casepunct::write_file_atomic((dir / "vocab.json").string(), vocab.to_json());

  const auto result = casepunct::lambda_sweep(train_docs, dev_docs, test_docs,
                                              vocab, rc.encoder, rc.train,
                                              lambdas);
  write_json(dir / "sweep.json", casepunct::sweep_to_json(result));
  const std::string table = casepunct::render_sweep_table(result);
  casepunct::write_file_atomic((dir / "sweep.txt").string(), table);
  write_resolved_config(dir, "sweep", rc);
  std::cout << table;
}

void cmd_transfer(const CommonFlags& flags, const std::string& source_train,
                  const std::string& source_dev,
                  const std::string& target_train,
                  const std::string& target_dev,
                  const std::string& target_test,
                  std::vector<std::size_t> sizes, const std::string& out_dir) {
  const RunConfig rc = flags.resolve();
  const auto dir = prepare_out_dir(out_dir);

  casepunct::CorpusSplit source;
  source.train = casepunct::load_labeled_jsonl(source_train);
  source.dev = casepunct::load_labeled_jsonl(source_dev);
  casepunct::CorpusSplit target;
  target.train = casepunct::load_labeled_jsonl(target_train);
  target.dev = casepunct::load_labeled_jsonl(target_dev);
  target.test = casepunct::load_labeled_jsonl(target_test);

  // Shared vocabulary over both domains so checkpoints transfer unchanged.
  std::vector<casepunct::LabeledDocument> both = source.train;
  both.insert(both.end(), target.train.begin(), target.train.end());
  const casepunct::Vocabulary vocab = casepunct::build_vocab(
      both, static_cast<std::size_t>(rc.vocab_target_size),
      rc.train.cased_input, rc.vocab_min_freq);
  casepunct::write_file_atomic((dir / "vocab.json").string(), vocab.to_json());

  const auto result = casepunct::transfer_pipeline(source, target, sizes,
                                                   vocab, rc.encoder, rc.train);
  write_json(dir / "transfer.json", casepunct::sweep_to_json(result.table));
  const std::string table = casepunct::render_sweep_table(result.table);
  casepunct::write_file_atomic((dir / "transfer.txt").string(), table);
  casepunct::save_checkpoint(result.intermediate,
                             (dir / "ckpt_intermediate").string());
  std::size_t arm = 0;
  for (const std::size_t n : sizes) {
    if (n == 0) continue;
    casepunct::save_checkpoint(
        result.fine_tuned[arm],
        (dir / ("ckpt_with_" + std::to_string(n))).string());
    casepunct::save_checkpoint(
        result.from_scratch[arm],
        (dir / ("ckpt_scratch_" + std::to_string(n))).string());
    ++arm;
  }
  write_resolved_config(dir, "transfer", rc);
  std::cout << table;
}

void cmd_evaluate(const CommonFlags& flags, const std::string& ckpt_prefix,
                  const std::string& vocab_path, const std::string& in_path,
                  const std::string& out_dir) {
  const RunConfig rc = flags.resolve();
  const auto dir = prepare_out_dir(out_dir);
  const auto ckpt = casepunct::load_checkpoint(ckpt_prefix);
  const auto vocab = load_vocab(vocab_path);
  if (vocab.hash() != ckpt.vocab_hash) {
    casepunct::raise(ErrorCode::VocabularyMismatch,
                     "vocabulary does not match the checkpoint");
  }
  const auto docs = casepunct::load_labeled_jsonl(in_path);
  const auto pair = casepunct::evaluate(ckpt.params, vocab, docs,
                                        ckpt.train_config.ablation);
  save_eval_reports(dir, pair);
  write_resolved_config(dir, "evaluate", rc);
}

void cmd_predict(const std::string& ckpt_prefix, const std::string& vocab_path,
                 const std::string& in_path, const std::string& out_path) {
  const auto ckpt = casepunct::load_checkpoint(ckpt_prefix);
  const auto vocab = load_vocab(vocab_path);
  if (vocab.hash() != ckpt.vocab_hash) {
    casepunct::raise(ErrorCode::VocabularyMismatch,
                     "vocabulary does not match the checkpoint");
  }

  const std::string text = casepunct::read_file(in_path);
  std::string out;
  bool warned = false;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    std::string line = end == std::string::npos
                           ? text.substr(pos)
                           : text.substr(pos, end - pos);
    ++line_no;
    if (end == std::string::npos && line.empty()) break;

    bool lowered = false;
    for (char& c : line) {
      if (c >= 'A' && c <= 'Z') {
        c = static_cast<char>(c - 'A' + 'a');
        lowered = true;
      }
    }
    if (lowered && !warned) {
      const json warning{
          {"warning",
           {{"code", "UppercaseInput"},
            {"message", "input line " + std::to_string(line_no) +
                            " contains uppercase; lowercasing internally"}}}};
      std::cerr << warning.dump() << "\n";
      warned = true;
    }

    std::vector<std::string> words;
    std::string word;
    for (const char c : line + " ") {
      if (c == ' ' || c == '\t' || c == '\r') {
        if (!word.empty()) words.push_back(std::move(word));
        word.clear();
      } else {
        word += c;
      }
    }

    if (!words.empty()) {
      const auto max_len =
          static_cast<std::size_t>(ckpt.params.config.max_positions);
      const auto pred =
          casepunct::predict(ckpt.params, words, vocab, max_len);
      casepunct::LabeledDocument doc;
      doc.id = std::to_string(line_no);
      doc.words = std::move(words);
      doc.casing = pred.casing;
      doc.punct = pred.punct;
      out += casepunct::render(doc, true, true);
    }
    out += '\n';
    if (end == std::string::npos) break;
    pos = end + 1;
  }

  if (out_path.empty()) {
    std::cout << out;
  } else {
    casepunct::write_file_atomic(out_path, out);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"truecasing and punctuation restoration pipeline"};
  app.require_subcommand(1);

  // prepare
  auto* prepare = app.add_subcommand(
      "prepare", "label a raw JSONL corpus and split it");
  CommonFlags prepare_flags;
  std::string prepare_in, prepare_out;
  prepare_flags.add_to(prepare);
  prepare->add_option("--in", prepare_in, "raw JSONL corpus")->required();
  prepare->add_option("--out-dir", prepare_out, "output directory")
      ->required();
  prepare->callback(
      [&] { cmd_prepare(prepare_flags, prepare_in, prepare_out); });

  // stats
  auto* stats = app.add_subcommand("stats", "corpus label statistics");
  CommonFlags stats_flags;
  std::string stats_in, stats_out;
  stats_flags.add_to(stats);
  stats->add_option("--in", stats_in, "labeled JSONL corpus")->required();
  stats->add_option("--out-dir", stats_out, "output directory")->required();
  stats->callback([&] { cmd_stats(stats_flags, stats_in, stats_out); });

  // train
  auto* train = app.add_subcommand("train", "train a tagging model");
  CommonFlags train_flags;
  std::string train_train, train_dev, train_test, train_vocab, train_init,
      train_stage = "scratch", train_out;
  train_flags.add_to(train);
  train->add_option("--train", train_train, "labeled train JSONL")->required();
  train->add_option("--dev", train_dev, "labeled dev JSONL");
  train->add_option("--test", train_test, "labeled test JSONL");
  train->add_option("--vocab", train_vocab,
                    "existing vocabulary JSON (default: build from train)");
  train->add_option("--init", train_init, "checkpoint prefix to fine-tune");
  train->add_option("--stage", train_stage, "lineage stage name");
  train->add_option("--out-dir", train_out, "output directory")->required();
  train->callback([&] {
    cmd_train(train_flags, train_train, train_dev, train_test, train_vocab,
              train_init, train_stage, train_out);
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "train once per lambda value");
  CommonFlags sweep_flags;
  std::string sweep_train, sweep_dev, sweep_test, sweep_out;
  std::vector<double> sweep_lambdas;
  sweep_flags.add_to(sweep);
  sweep->add_option("--train", sweep_train, "labeled train JSONL")->required();
  sweep->add_option("--dev", sweep_dev, "labeled dev JSONL")->required();
  sweep->add_option("--test", sweep_test, "labeled test JSONL")->required();
  sweep->add_option("--lambdas", sweep_lambdas, "lambda grid")
      ->required()
      ->delimiter(',');
  sweep->add_option("--out-dir", sweep_out, "output directory")->required();
  sweep->callback([&] {
    cmd_sweep(sweep_flags, sweep_train, sweep_dev, sweep_test, sweep_lambdas,
              sweep_out);
  });

  // transfer
  auto* transfer = app.add_subcommand(
      "transfer", "two-stage low-resource transfer pipeline");
  CommonFlags transfer_flags;
  std::string tr_source_train, tr_source_dev, tr_target_train, tr_target_dev,
      tr_target_test, tr_out;
  std::vector<std::size_t> tr_sizes;
  transfer_flags.add_to(transfer);
  transfer->add_option("--source-train", tr_source_train, "source train JSONL")
      ->required();
  transfer->add_option("--source-dev", tr_source_dev, "source dev JSONL")
      ->required();
  transfer->add_option("--target-train", tr_target_train, "target train JSONL")
      ->required();
  transfer->add_option("--target-dev", tr_target_dev, "target dev JSONL")
      ->required();
  transfer->add_option("--target-test", tr_target_test, "target test JSONL")
      ->required();
  transfer->add_option("--sizes", tr_sizes, "target subset sizes, ascending")
      ->required()
      ->delimiter(',');
  transfer->add_option("--out-dir", tr_out, "output directory")->required();
  transfer->callback([&] {
    cmd_transfer(transfer_flags, tr_source_train, tr_source_dev,
                 tr_target_train, tr_target_dev, tr_target_test, tr_sizes,
                 tr_out);
  });

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate",
                                      "score a checkpoint on labeled data");
  CommonFlags eval_flags;
  std::string eval_ckpt, eval_vocab, eval_in, eval_out;
  eval_flags.add_to(evaluate);
  evaluate->add_option("--checkpoint", eval_ckpt, "checkpoint prefix")
      ->required();
  evaluate->add_option("--vocab", eval_vocab, "vocabulary JSON")->required();
  evaluate->add_option("--in", eval_in, "labeled JSONL corpus")->required();
  evaluate->add_option("--out-dir", eval_out, "output directory")->required();
  evaluate->callback([&] {
    cmd_evaluate(eval_flags, eval_ckpt, eval_vocab, eval_in, eval_out);
  });

  // predict
  auto* predict = app.add_subcommand(
      "predict", "restore casing and punctuation in plain text");
  std::string pred_ckpt, pred_vocab, pred_in, pred_out;
  predict->add_option("--checkpoint", pred_ckpt, "checkpoint prefix")
      ->required();
  predict->add_option("--vocab", pred_vocab, "vocabulary JSON")->required();
  predict->add_option("--in", pred_in, "plain text, one document per line")
      ->required();
  predict->add_option("--out", pred_out, "output file (default: stdout)");
  predict->callback(
      [&] { cmd_predict(pred_ckpt, pred_vocab, pred_in, pred_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const casepunct::Error& e) {
    emit_error(casepunct::error_code_name(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    emit_error("Internal", e.what());
    return 3;
  }
  return 0;
}
