// Acceptance gate: one self-contained check per release criterion, each
// printing a single PASS/FAIL line.  Run with no arguments for the full
// gate or with a criterion number (1-11) to run one check.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "casepunct/corpus.hpp"
#include "casepunct/encoding.hpp"
#include "casepunct/errors.hpp"
#include "casepunct/metrics.hpp"
#include "casepunct/model.hpp"
#include "casepunct/rng.hpp"
#include "casepunct/train.hpp"
#include "casepunct/vocab.hpp"
#include "support/helpers.hpp"
#include "support/synthetic.hpp"

using namespace casepunct;
namespace ct = casepunct::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Setup {
  Vocabulary vocab;
  std::vector<LabeledDocument> docs;
  Batch batch;
  ModelParams params;
};

Setup make_setup(int model_dim, int num_layers, int num_heads, int ffn_dim,
                 uint64_t seed) {
  Setup s;
  s.docs = ct::make_rule_corpus(ct::source_profile(), 4, seed, "a");
  s.vocab = build_vocab(s.docs, 58, false);
  s.batch = make_batch(s.docs, s.vocab, 32);
  EncoderConfig config;
  config.num_layers = num_layers;
  config.model_dim = model_dim;
  config.num_heads = num_heads;
  config.ffn_dim = ffn_dim;
  config.max_positions = 32;
  config.head_dropout = 0.0;
  config.vocab_size = s.vocab.size();
  s.params = ModelParams::init(config, seed);
  return s;
}

double loss_at(const ModelParams& params, const Batch& batch, double lambda) {
  const auto acts = forward(params, batch.chunks);
  return joint_loss(acts, batch, lambda).joint;
}

// --- 1: the joint loss is the exact lambda mix of the two task losses.
bool criterion1(std::string& detail) {
  auto s = make_setup(16, 1, 2, 32, 5);
  const auto acts = forward(s.params, s.batch.chunks);
  const auto at = [&](double lambda) { return joint_loss(acts, s.batch, lambda); };

  const auto casing_only = at(1.0);
  const auto punct_only = at(0.0);
  bool ok = casing_only.joint == casing_only.ce_casing &&
            punct_only.joint == punct_only.ce_punct;
  const double a = casing_only.ce_casing;
  const double b = punct_only.ce_punct;
  for (const double lambda : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
    const auto jl = at(lambda);
    ok = ok && jl.ce_casing == a && jl.ce_punct == b &&
         jl.joint == lambda * a + (1.0 - lambda) * b;
  }
  std::ostringstream os;
  os << "ce_casing=" << a << " ce_punct=" << b
     << ", endpoints and 7-point grid bit-exact";
  detail = os.str();
  return ok;
}

// --- 2: labels outside first-subword positions are inert, bit-exactly.
bool criterion2(std::string& detail) {
  auto s = make_setup(16, 1, 2, 32, 5);
  const double lambda = 0.6;
  const auto acts = forward(s.params, s.batch.chunks);
  const auto base_loss = joint_loss(acts, s.batch, lambda);
  const auto base_grads = backward(s.params, s.batch, lambda, acts);

  size_t maskable = 0;
  for (const auto& chunk : s.batch.chunks) {
    for (const auto flag : chunk.first_subword) {
      if (!flag) ++maskable;
    }
  }
  if (maskable == 0) {
    detail = "setup produced no maskable positions";
    return false;
  }

  std::mt19937_64 rng(mix_seed(2026, "masking_acceptance"));
  const int trials = 120;
  for (int trial = 0; trial < trials; ++trial) {
    Batch tampered = s.batch;
    for (size_t c = 0; c < tampered.chunks.size(); ++c) {
      const auto& chunk = tampered.chunks[c];
      auto& labels = tampered.labels[c];
      for (size_t t = 0; t < chunk.size(); ++t) {
        if (chunk.first_subword[t]) continue;
        labels.casing[t] = static_cast<int>(bounded_rand(rng, 4)) - 1;
        labels.punct[t] = static_cast<int>(bounded_rand(rng, 9)) - 1;
      }
    }
    const auto loss = joint_loss(acts, tampered, lambda);
    if (loss.joint != base_loss.joint ||
        loss.ce_casing != base_loss.ce_casing ||
        loss.ce_punct != base_loss.ce_punct) {
      detail = "loss changed on trial " + std::to_string(trial);
      return false;
    }
    const auto grads = backward(s.params, tampered, lambda, acts);
    if (!ct::params_equal(grads, base_grads)) {
      detail = "gradients changed on trial " + std::to_string(trial);
      return false;
    }
  }
  detail = std::to_string(trials) + " random relabelings of " +
           std::to_string(maskable) + " positions left loss and gradients "
           "bit-identical";
  return true;
}

// --- 3: analytic gradients agree with central finite differences.
bool criterion3(std::string& detail) {
  auto s = make_setup(8, 2, 2, 16, 11);
  const double lambda = 0.7;
  const double h = 1e-5;

  const auto acts = forward(s.params, s.batch.chunks);
  const auto grads = backward(s.params, s.batch, lambda, acts);
  std::vector<const Eigen::MatrixXd*> gs;
  grads.for_each_tensor(
      [&gs](const std::string&, const Eigen::MatrixXd& m) { gs.push_back(&m); });

  double worst_overall = 0.0;
  std::string worst_tensor;
  bool ok = true;
  size_t ti = 0;
  s.params.for_each_tensor([&](const std::string& name, Eigen::MatrixXd& m) {
    const Eigen::MatrixXd& g = *gs[ti++];
    double worst = 0.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const double saved = m(r, c);
        m(r, c) = saved + h;
        const double up = loss_at(s.params, s.batch, lambda);
        m(r, c) = saved - h;
        const double down = loss_at(s.params, s.batch, lambda);
        m(r, c) = saved;
        const double fd = (up - down) / (2.0 * h);
        const double denom = std::max(std::abs(g(r, c)) + std::abs(fd), 1e-4);
        worst = std::max(worst, std::abs(g(r, c) - fd) / denom);
      }
    }
    if (worst > worst_overall) {
      worst_overall = worst;
      worst_tensor = name;
    }
    ok = ok && worst < 1e-4;
  });
  std::ostringstream os;
  os << "worst relative error " << worst_overall << " (" << worst_tensor
     << "), bound 1e-4, every tensor of a 2-layer dim-8 model";
  detail = os.str();
  return ok;
}

// --- 4: the macro mean over all eight class F1 values reproduces the
// published whole-corpus figure.
bool criterion4(std::string& detail) {
  const std::vector<double> class_f1 = {95.25, 64.88, 10.83, 3.14,
                                        72.22, 68.61, 0.0,  67.74};
  const double mean = macro_mean(class_f1);
  const double diff = std::abs(mean - 47.83);
  std::ostringstream os;
  os << "mean of eight class-wise F1 values = " << mean << ", vs 47.83 (|diff|="
     << diff << ", tolerance 0.01), formatted \"" << format_percent(mean)
     << "\"";
  detail = os.str();
  return diff < 0.01 && format_percent(mean) == "47.83";
}

// Independent nested-loop recount mirroring the published formulas exactly.
CorpusStats brute_force_stats(std::span<const LabeledDocument> corpus) {
  CorpusStats s;
  long long joint[kNumPunctLabels][kNumCasingLabels] = {};
  for (const auto& doc : corpus) {
    for (size_t i = 0; i < doc.words.size(); ++i) {
      s.total_words += 1;
      s.casing[static_cast<size_t>(doc.casing[i])].count += 1;
      s.punct[static_cast<size_t>(doc.punct[i])].count += 1;
    }
    for (size_t i = 0; i + 1 < doc.words.size(); ++i) {
      joint[static_cast<size_t>(doc.punct[i])]
           [static_cast<size_t>(doc.casing[i + 1])] += 1;
    }
  }
  for (auto& c : s.casing) {
    c.percent = 100.0 * c.count / static_cast<double>(s.total_words);
  }
  for (auto& p : s.punct) {
    p.percent = 100.0 * p.count / static_cast<double>(s.total_words);
  }
  for (int p = 0; p < kNumPunctLabels; ++p) {
    long long support = 0;
    for (int c = 0; c < kNumCasingLabels; ++c) support += joint[p][c];
    s.joint[p].support = support;
    for (int c = 0; c < kNumCasingLabels; ++c) {
      s.joint[p].p[c] = support > 0 ? static_cast<double>(joint[p][c]) /
                                          static_cast<double>(support)
                                    : 0.0;
    }
  }
  return s;
}

// --- 5: corpus statistics match a brute-force recount exactly.
bool criterion5(std::string& detail) {
  long long total_words = 0;
  for (int s = 1; s <= 100; ++s) {
    const size_t n_docs = 1 + static_cast<size_t>(s * 7) % 60;
    const auto docs = ct::make_rule_corpus(
        ct::source_profile(), n_docs, static_cast<uint64_t>(s),
        "s" + std::to_string(s) + "_");
    size_t words = 0;
    for (const auto& d : docs) words += d.size();
    if (words > 1000) {
      detail = "corpus " + std::to_string(s) + " exceeded 1000 words";
      return false;
    }
    total_words += static_cast<long long>(words);

    const auto fast = compute_stats(docs);
    const auto slow = brute_force_stats(docs);
    if (fast.total_words != slow.total_words) {
      detail = "word total mismatch on corpus " + std::to_string(s);
      return false;
    }
    for (int c = 0; c < kNumCasingLabels; ++c) {
      if (fast.casing[c].count != slow.casing[c].count ||
          fast.casing[c].percent != slow.casing[c].percent) {
        detail = "casing row mismatch on corpus " + std::to_string(s);
        return false;
      }
    }
    for (int p = 0; p < kNumPunctLabels; ++p) {
      if (fast.punct[p].count != slow.punct[p].count ||
          fast.punct[p].percent != slow.punct[p].percent ||
          fast.joint[p].support != slow.joint[p].support) {
        detail = "punct row mismatch on corpus " + std::to_string(s);
        return false;
      }
      double row_sum = 0.0;
      for (int c = 0; c < kNumCasingLabels; ++c) {
        if (fast.joint[p].p[c] != slow.joint[p].p[c]) {
          detail = "joint cell mismatch on corpus " + std::to_string(s);
          return false;
        }
        row_sum += fast.joint[p].p[c];
      }
      if (fast.joint[p].support > 0 && std::abs(row_sum - 1.0) > 1e-12) {
        detail = "joint row does not sum to 1 on corpus " + std::to_string(s);
        return false;
      }
    }
  }
  detail = "100 corpora (" + std::to_string(total_words) +
           " words in total) matched count-for-count and bit-for-bit";
  return true;
}

// --- 6: extract_labels undoes render exactly.
bool criterion6(std::string& detail) {
  std::mt19937_64 rng(mix_seed(99, "acceptance_roundtrip"));
  for (int i = 0; i < 1000; ++i) {
    const auto doc = ct::make_roundtrip_doc(rng, "rt" + std::to_string(i));
    const auto back = extract_labels(render(doc, true, true), doc.id);
    if (back.words != doc.words || back.casing != doc.casing ||
        back.punct != doc.punct) {
      detail = "document " + std::to_string(i) + " did not survive the trip";
      return false;
    }
  }
  detail = "1000 generated documents re-extracted to identical labels";
  return true;
}

// --- 7: the default desk-scale model memorizes a 100-document corpus.
bool criterion7(std::string& detail) {
  const auto start = Clock::now();
  const auto docs = ct::make_rule_corpus(ct::source_profile(), 100, 77, "ov");
  const auto vocab = build_vocab(docs, 220, false);
  const EncoderConfig encoder;  // default desk-scale configuration

  TrainConfig config;
  config.lambda = 0.5;
  config.learning_rate = 3e-3;
  config.batch_size = 8;
  config.max_epochs = 25;
  config.patience = 25;

  Checkpoint ckpt;
  bool have = false;
  int epochs_total = 0;
  ct::Accuracy acc;
  while (epochs_total < 200) {
    config.seed = 7 + static_cast<uint64_t>(epochs_total);
    TrainRun run;
    run.corpus_id = "overfit";
    ckpt = train(docs, {}, vocab, encoder, config, have ? &ckpt : nullptr, run);
    have = true;
    epochs_total += config.max_epochs;
    acc = ct::word_accuracy(ckpt.params, vocab, docs,
                            static_cast<size_t>(encoder.max_positions));
    if (acc.casing >= 0.99 && acc.punct >= 0.99) break;
  }
  const double elapsed = seconds_since(start);
  std::ostringstream os;
  os << "word accuracy casing=" << 100.0 * acc.casing
     << "% punct=" << 100.0 * acc.punct << "% after " << epochs_total
     << " epochs in " << elapsed << "s (bounds: >=99% both, <=200 epochs, "
     << "<300s)";
  detail = os.str();
  return acc.casing >= 0.99 && acc.punct >= 0.99 && epochs_total <= 200 &&
         elapsed < 300.0;
}

// --- 8: joint training helps casing when punctuation conditions it.
bool criterion8(std::string& detail) {
  auto profile = ct::source_profile();
  profile.min_words = 5;
  profile.max_words = 9;
  profile.trigger_prob = 0.35;
  profile.so_prob = 0.14;
  profile.but_prob = 0.18;
  const auto train_docs = ct::make_rule_corpus(profile, 80, 501, "mt");
  const auto test_docs = ct::make_rule_corpus(profile, 40, 502, "mte");
  const auto vocab = build_vocab(train_docs, 220, false);

  EncoderConfig encoder;
  encoder.num_layers = 1;
  encoder.model_dim = 64;
  encoder.num_heads = 4;
  encoder.ffn_dim = 128;
  encoder.max_positions = 48;
  encoder.head_dropout = 0.15;

  double sum_joint = 0.0;
  double sum_single = 0.0;
  const int n_seeds = 5;
  for (int i = 0; i < n_seeds; ++i) {
    for (const double lambda : {0.5, 1.0}) {
      TrainConfig config;
      config.lambda = lambda;
      config.learning_rate = 5e-3;
      config.batch_size = 4;
      config.max_epochs = 12;
      config.patience = 12;
      config.seed = mix_seed(900 + static_cast<uint64_t>(i), "mt_benefit");
      const auto ckpt = train(train_docs, {}, vocab, encoder, config);
      const double casing_f1 =
          evaluate(ckpt.params, vocab, test_docs).casing.macro_f1;
      (lambda == 0.5 ? sum_joint : sum_single) += casing_f1;
    }
  }
  const double mean_joint = sum_joint / n_seeds;
  const double mean_single = sum_single / n_seeds;
  std::ostringstream os;
  os << "held-out casing Macro F1 over 5 seeds: lambda=0.5 mean "
     << format_percent(mean_joint) << " vs lambda=1.0 mean "
     << format_percent(mean_single) << " (require joint >= single-task)";
  detail = os.str();
  return mean_joint >= mean_single;
}

// --- 9: an intermediate-task checkpoint helps at n=5 target documents and
// the advantage fades once the full target set is available.
bool criterion9(std::string& detail) {
  CorpusSplit source;
  source.train = ct::make_rule_corpus(ct::source_profile(), 150, 601, "src");
  source.dev = ct::make_rule_corpus(ct::source_profile(), 20, 602, "srcd");
  // Short documents and high rule rates keep the target task learnable from
  // scratch once the full split is available (the encoder's learned absolute
  // positions need dense per-position coverage of each rule); at n=5 that
  // coverage is absent and only the transferred checkpoint supplies it.
  auto tgt = ct::target_profile();
  tgt.min_words = 5;
  tgt.max_words = 9;
  tgt.trigger_prob = 0.32;
  tgt.so_prob = 0.13;
  tgt.but_prob = 0.16;
  CorpusSplit target;
  target.train = ct::make_rule_corpus(tgt, 120, 603, "tgt");
  target.dev = ct::make_rule_corpus(tgt, 15, 604, "tgtd");
  target.test = ct::make_rule_corpus(tgt, 40, 605, "tgtt");
  const size_t full = target.train.size();

  std::vector<LabeledDocument> both = source.train;
  both.insert(both.end(), target.train.begin(), target.train.end());
  const auto vocab = build_vocab(both, 260, false);

  EncoderConfig encoder;
  encoder.num_layers = 1;
  encoder.model_dim = 64;
  encoder.num_heads = 4;
  encoder.ffn_dim = 128;
  encoder.max_positions = 48;
  encoder.head_dropout = 0.1;

  const std::vector<size_t> sizes = {5, full};
  double with5 = 0.0, scratch5 = 0.0, with_full = 0.0, scratch_full = 0.0;
  const int n_seeds = 5;
  for (int i = 0; i < n_seeds; ++i) {
    TrainConfig config;
    config.lambda = 0.5;
    config.learning_rate = 5e-3;
    config.fine_tune_learning_rate = 2e-3;
    config.batch_size = 4;
    config.max_epochs = 60;
    config.patience = 60;
    config.seed = mix_seed(1200 + static_cast<uint64_t>(i), "transfer_bench");
    const auto result =
        transfer_pipeline(source, target, sizes, vocab, encoder, config);
    with5 += *result.table.rows[0].values[1];
    scratch5 += *result.table.rows[0].values[3];
    with_full += *result.table.rows[1].values[1];
    scratch_full += *result.table.rows[1].values[3];
  }
  with5 /= n_seeds;
  scratch5 /= n_seeds;
  with_full /= n_seeds;
  scratch_full /= n_seeds;
  const double full_gap = std::abs(with_full - scratch_full);
  std::ostringstream os;
  os << "punct Macro F1 means over 5 seeds: n=5 with-intermediate "
     << format_percent(with5) << " vs from-scratch " << format_percent(scratch5)
     << "; n=" << full << " gap " << format_percent(full_gap)
     << " (require n=5 advantage and full gap < 2)";
  detail = os.str();
  return with5 > scratch5 && full_gap < 2.0;
}

bool tables_identical(const SweepResult& a, const SweepResult& b) {
  if (a.name != b.name || a.columns != b.columns ||
      a.rows.size() != b.rows.size()) {
    return false;
  }
  for (size_t r = 0; r < a.rows.size(); ++r) {
    if (a.rows[r].setting != b.rows[r].setting ||
        a.rows[r].values.size() != b.rows[r].values.size()) {
      return false;
    }
    for (size_t v = 0; v < a.rows[r].values.size(); ++v) {
      const auto& x = a.rows[r].values[v];
      const auto& y = b.rows[r].values[v];
      if (x.has_value() != y.has_value()) return false;
      if (x.has_value() && *x != *y) return false;
    }
  }
  return true;
}

bool lineage_identical(const std::vector<StageRecord>& a,
                       const std::vector<StageRecord>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].stage != b[i].stage || a[i].corpus_id != b[i].corpus_id ||
        a[i].epochs_run != b[i].epochs_run ||
        a[i].dev_casing_f1 != b[i].dev_casing_f1 ||
        a[i].dev_punct_f1 != b[i].dev_punct_f1) {
      return false;
    }
  }
  return true;
}

// --- 10: the whole transfer pipeline is bit-deterministic under one seed.
bool criterion10(std::string& detail) {
  CorpusSplit source;
  source.train = ct::make_rule_corpus(ct::source_profile(), 12, 701, "dsrc");
  source.dev = ct::make_rule_corpus(ct::source_profile(), 4, 702, "dsrcd");
  CorpusSplit target;
  target.train = ct::make_rule_corpus(ct::target_profile(), 10, 703, "dtgt");
  target.dev = ct::make_rule_corpus(ct::target_profile(), 3, 704, "dtgtd");
  target.test = ct::make_rule_corpus(ct::target_profile(), 4, 705, "dtgtt");

  std::vector<LabeledDocument> both = source.train;
  both.insert(both.end(), target.train.begin(), target.train.end());
  const auto vocab = build_vocab(both, 140, false);

  EncoderConfig encoder;
  encoder.num_layers = 1;
  encoder.model_dim = 16;
  encoder.num_heads = 2;
  encoder.ffn_dim = 32;
  encoder.max_positions = 32;
  encoder.head_dropout = 0.1;

  TrainConfig config;
  config.lambda = 0.5;
  config.learning_rate = 3e-3;
  config.batch_size = 4;
  config.max_epochs = 2;
  config.patience = 2;
  config.seed = 9;

  const std::vector<size_t> sizes = {0, 2, 6};
  const auto run = [&] {
    return transfer_pipeline(source, target, sizes, vocab, encoder, config);
  };
  const auto first = run();
  const auto second = run();

  bool ok = ct::params_equal(first.intermediate.params,
                             second.intermediate.params) &&
            lineage_identical(first.intermediate.lineage,
                              second.intermediate.lineage) &&
            tables_identical(first.table, second.table) &&
            first.fine_tuned.size() == second.fine_tuned.size() &&
            first.from_scratch.size() == second.from_scratch.size();
  for (size_t i = 0; ok && i < first.fine_tuned.size(); ++i) {
    ok = ct::params_equal(first.fine_tuned[i].params,
                          second.fine_tuned[i].params) &&
         lineage_identical(first.fine_tuned[i].lineage,
                           second.fine_tuned[i].lineage) &&
         ct::params_equal(first.from_scratch[i].params,
                          second.from_scratch[i].params) &&
         lineage_identical(first.from_scratch[i].lineage,
                           second.from_scratch[i].lineage);
  }
  detail = "two runs over sizes {0,2,6}: checkpoints, lineage and report "
           "tables identical bit-for-bit";
  return ok;
}

// --- 11: the most-frequent-casing baseline matches a manual tally.
bool criterion11(std::string& detail) {
  // Training document: pairs Blank->UC/LC/LC (argmax LC), FullStop->UC,
  // Comma->LC; unsupported rows fall back to the Blank row.
  LabeledDocument tr;
  tr.id = "t";
  tr.words = {"a", "b", "c", "d", "e"};
  tr.casing = {CasingLabel::UC, CasingLabel::LC, CasingLabel::UC,
               CasingLabel::LC, CasingLabel::LC};
  tr.punct = {PunctLabel::Blank, PunctLabel::FullStop, PunctLabel::Blank,
              PunctLabel::Comma, PunctLabel::Blank};
  const std::vector<LabeledDocument> train_corpus = {tr};
  const auto stats = compute_stats(train_corpus);

  // Evaluation corpus of 20 words; the baseline predicts LC everywhere
  // except right after a FullStop (UC), including at document starts.
  LabeledDocument e1, e2;
  e1.id = "e1";
  e1.words.assign(10, "w");
  e1.punct = {PunctLabel::Blank,    PunctLabel::FullStop, PunctLabel::Blank,
              PunctLabel::Blank,    PunctLabel::FullStop, PunctLabel::Blank,
              PunctLabel::Comma,    PunctLabel::Blank,    PunctLabel::Blank,
              PunctLabel::FullStop};
  e1.casing = {CasingLabel::UC, CasingLabel::LC, CasingLabel::UC,
               CasingLabel::LC, CasingLabel::LC, CasingLabel::UC,
               CasingLabel::LC, CasingLabel::LC, CasingLabel::AUC,
               CasingLabel::LC};
  e2.id = "e2";
  e2.words.assign(10, "w");
  e2.punct = {PunctLabel::FullStop, PunctLabel::Blank, PunctLabel::Blank,
              PunctLabel::FullStop, PunctLabel::Blank, PunctLabel::Blank,
              PunctLabel::Blank,    PunctLabel::FullStop, PunctLabel::Blank,
              PunctLabel::Blank};
  e2.casing = {CasingLabel::UC, CasingLabel::LC, CasingLabel::LC,
               CasingLabel::LC, CasingLabel::UC, CasingLabel::LC,
               CasingLabel::LC, CasingLabel::LC, CasingLabel::LC,
               CasingLabel::LC};
  const std::vector<LabeledDocument> docs = {e1, e2};
  const auto rep = most_frequent_casing_baseline(stats, docs);

  // Manual tally.  Predictions: e1 = LC,LC,UC,LC,LC,UC,LC,LC,LC,LC and
  // e2 = LC,UC,LC,LC,UC,LC,LC,LC,UC,LC.
  //   AUC: TP=0, predicted 0, gold 1            -> F1 = 0
  //   LC:  TP=12, predicted 15, gold 14         -> F1 = 2*12/(15+14) = 24/29
  //   UC:  TP=3,  predicted 5,  gold 5          -> F1 = 2*3/(5+5)   = 3/5
  const double expected = 100.0 * (0.0 + 24.0 / 29.0 + 3.0 / 5.0) / 3.0;
  const double diff = std::abs(rep.macro_f1 - expected);
  std::ostringstream os;
  os << "baseline Macro F1 " << rep.macro_f1 << " vs manual tally " << expected
     << " (|diff|=" << diff << ", tolerance 1e-9)";
  detail = os.str();
  return diff < 1e-9;
}

struct Criterion {
  int id;
  const char* summary;
  bool (*fn)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "joint loss endpoints and affinity across the weight grid", criterion1},
    {2, "first-subword masking leaves loss and gradients unchanged", criterion2},
    {3, "analytic gradients match central finite differences", criterion3},
    {4, "macro F1 equals the unweighted mean of class-wise F1", criterion4},
    {5, "corpus statistics match a brute-force recount", criterion5},
    {6, "label extraction inverts rendering", criterion6},
    {7, "desk-scale model overfits a 100-document corpus", criterion7},
    {8, "joint training matches or beats single-task casing", criterion8},
    {9, "intermediate-task transfer helps at n=5 and fades at full size",
     criterion9},
    {10, "transfer pipeline is bit-deterministic", criterion10},
    {11, "most-frequent-casing baseline matches a manual tally", criterion11},
};

}  // namespace

int main(int argc, char** argv) {
  int selected = 0;
  if (argc > 1) {
    selected = std::atoi(argv[1]);
    if (selected < 1 || selected > 11) {
      std::fprintf(stderr, "usage: %s [criterion 1-11]\n", argv[0]);
      return 2;
    }
  }

  bool all_pass = true;
  for (const auto& criterion : kCriteria) {
    if (selected != 0 && criterion.id != selected) continue;
    std::string detail;
    bool pass = false;
    try {
      pass = criterion.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL",
                criterion.id, criterion.summary, detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && pass;
  }
  return all_pass ? 0 : 1;
}
