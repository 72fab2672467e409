#include "casepunct/model.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "casepunct/errors.hpp"
#include "casepunct/rng.hpp"

namespace casepunct {

namespace {

double uniform01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

// Standard normal via Box-Muller, rejected outside two standard deviations.
double truncated_normal(std::mt19937_64& rng) {
  for (;;) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double z =
        std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    if (std::abs(z) <= 2.0) return z;
  }
}

double gelu_scalar(double x) {
  return 0.5 * x * (1.0 + std::erf(x / std::numbers::sqrt2));
}

double gelu_grad_scalar(double x) {
  const double cdf = 0.5 * (1.0 + std::erf(x / std::numbers::sqrt2));
  const double pdf =
      std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  return cdf + x * pdf;
}

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& scores) {
  Eigen::MatrixXd probs(scores.rows(), scores.cols());
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    const double m = scores.row(r).maxCoeff();
    const Eigen::ArrayXd e = (scores.row(r).array() - m).exp();
    probs.row(r) = e / e.sum();
  }
  return probs;
}

double nll_row(const Eigen::MatrixXd& logits, Eigen::Index row, int label) {
  const double m = logits.row(row).maxCoeff();
  const double lse =
      m + std::log((logits.row(row).array() - m).exp().sum());
  return lse - logits(row, label);
}

void layer_norm(const Eigen::MatrixXd& x, const Eigen::MatrixXd& gamma,
                const Eigen::MatrixXd& beta, Eigen::MatrixXd& out,
                Eigen::MatrixXd& xhat, Eigen::VectorXd& istd) {
  const auto d = static_cast<double>(x.cols());
  out.resize(x.rows(), x.cols());
  xhat.resize(x.rows(), x.cols());
  istd.resize(x.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double mu = x.row(r).mean();
    const double var = (x.row(r).array() - mu).square().sum() / d;
    istd(r) = 1.0 / std::sqrt(var + kLayerNormEps);
    xhat.row(r) = (x.row(r).array() - mu) * istd(r);
    out.row(r) =
        xhat.row(r).cwiseProduct(gamma.row(0)) + beta.row(0);
  }
}

// dx for y = gamma .* xhat + beta, accumulating parameter gradients.
Eigen::MatrixXd layer_norm_backward(const Eigen::MatrixXd& dy,
                                    const Eigen::MatrixXd& xhat,
                                    const Eigen::VectorXd& istd,
                                    const Eigen::MatrixXd& gamma,
                                    Eigen::MatrixXd& dgamma,
                                    Eigen::MatrixXd& dbeta) {
  dgamma += dy.cwiseProduct(xhat).colwise().sum();
  dbeta += dy.colwise().sum();
  Eigen::MatrixXd dxhat =
      dy.array().rowwise() * gamma.row(0).array();
  Eigen::MatrixXd dx(dy.rows(), dy.cols());
  for (Eigen::Index r = 0; r < dy.rows(); ++r) {
    const double m1 = dxhat.row(r).mean();
    const double m2 = dxhat.row(r).cwiseProduct(xhat.row(r)).mean();
    dx.row(r) =
        istd(r) * (dxhat.row(r).array() - m1 - xhat.row(r).array() * m2);
  }
  return dx;
}

int argmax_lowest(const Eigen::MatrixXd& logits, Eigen::Index row) {
  int best = 0;
  for (int j = 1; j < logits.cols(); ++j) {
    if (logits(row, j) > logits(row, best)) best = j;
  }
  return best;
}

void check_batch_shapes(const Activations& acts, const Batch& batch) {
  if (acts.chunks.size() != batch.chunks.size()) {
    raise(ErrorCode::ShapeMismatch,
          "activations hold " + std::to_string(acts.chunks.size()) +
              " chunks but the batch has " +
              std::to_string(batch.chunks.size()));
  }
  for (std::size_t c = 0; c < batch.chunks.size(); ++c) {
    const auto& enc = batch.chunks[c];
    const auto& lbl = batch.labels[c];
    if (lbl.casing.size() != enc.size() || lbl.punct.size() != enc.size()) {
      raise(ErrorCode::ShapeMismatch,
            "label arrays of chunk " + std::to_string(c) +
                " do not match its token count");
    }
    if (acts.chunks[c].real_len != enc.size()) {
      raise(ErrorCode::ShapeMismatch,
            "activations of chunk " + std::to_string(c) +
                " were computed for a different encoding");
    }
    if (batch.chunk_doc[c] < 0 || batch.chunk_doc[c] >= batch.num_docs) {
      raise(ErrorCode::ShapeMismatch,
            "chunk " + std::to_string(c) + " maps to document " +
                std::to_string(batch.chunk_doc[c]) + " outside the batch");
    }
  }
}

bool supervised_casing(const Encoding& enc, const AlignedLabels& lbl,
                       std::size_t t) {
  return enc.first_subword[t] && lbl.casing[t] != kIgnoreLabel;
}

bool supervised_punct(const Encoding& enc, const AlignedLabels& lbl,
                      std::size_t t) {
  return enc.first_subword[t] && lbl.punct[t] != kIgnoreLabel;
}

}  // namespace

void EncoderConfig::validate() const {
  if (num_layers < 1 || model_dim < 1 || num_heads < 1 || ffn_dim < 1 ||
      max_positions < 1 || vocab_size < 1) {
    raise(ErrorCode::InvalidArgument,
          "encoder configuration requires positive dimensions");
  }
  if (model_dim % num_heads != 0) {
    raise(ErrorCode::InvalidArgument,
          "model_dim " + std::to_string(model_dim) +
              " is not divisible by num_heads " + std::to_string(num_heads));
  }
  if (!(head_dropout >= 0.0 && head_dropout < 1.0)) {
    raise(ErrorCode::InvalidArgument, "head_dropout must lie in [0, 1)");
  }
}

ModelParams ModelParams::shaped(const EncoderConfig& config) {
  config.validate();
  ModelParams p;
  p.config = config;
  const int d = config.model_dim;
  const int f = config.ffn_dim;
  p.token_embed = Eigen::MatrixXd::Zero(config.vocab_size, d);
  p.pos_embed = Eigen::MatrixXd::Zero(config.max_positions, d);
  p.layers.resize(config.num_layers);
  for (auto& lay : p.layers) {
    lay.wq = Eigen::MatrixXd::Zero(d, d);
    lay.wk = Eigen::MatrixXd::Zero(d, d);
    lay.wv = Eigen::MatrixXd::Zero(d, d);
    lay.wo = Eigen::MatrixXd::Zero(d, d);
    lay.bq = Eigen::MatrixXd::Zero(1, d);
    lay.bk = Eigen::MatrixXd::Zero(1, d);
    lay.bv = Eigen::MatrixXd::Zero(1, d);
    lay.bo = Eigen::MatrixXd::Zero(1, d);
    lay.ln1_gamma = Eigen::MatrixXd::Zero(1, d);
    lay.ln1_beta = Eigen::MatrixXd::Zero(1, d);
    lay.w1 = Eigen::MatrixXd::Zero(d, f);
    lay.b1 = Eigen::MatrixXd::Zero(1, f);
    lay.w2 = Eigen::MatrixXd::Zero(f, d);
    lay.b2 = Eigen::MatrixXd::Zero(1, d);
    lay.ln2_gamma = Eigen::MatrixXd::Zero(1, d);
    lay.ln2_beta = Eigen::MatrixXd::Zero(1, d);
  }
  p.casing_w = Eigen::MatrixXd::Zero(d, kNumCasingLabels);
  p.casing_b = Eigen::MatrixXd::Zero(1, kNumCasingLabels);
  p.punct_w = Eigen::MatrixXd::Zero(d, kNumPunctLabels);
  p.punct_b = Eigen::MatrixXd::Zero(1, kNumPunctLabels);
  return p;
}

ModelParams ModelParams::init(const EncoderConfig& config, std::uint64_t seed) {
  ModelParams p = shaped(config);
  std::mt19937_64 rng(mix_seed(seed, "param_init"));
  const auto fill = [&rng](Eigen::MatrixXd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        m(r, c) = 0.02 * truncated_normal(rng);
      }
    }
  };
  fill(p.token_embed);
  fill(p.pos_embed);
  for (auto& lay : p.layers) {
    fill(lay.wq);
    fill(lay.wk);
    fill(lay.wv);
    fill(lay.wo);
    fill(lay.w1);
    fill(lay.w2);
    lay.ln1_gamma.setOnes();
    lay.ln2_gamma.setOnes();
  }
  fill(p.casing_w);
  fill(p.punct_w);
  return p;
}

ModelParams ModelParams::zeros_like(const ModelParams& other) {
  return shaped(other.config);
}

std::size_t ModelParams::num_parameters() const {
  std::size_t n = 0;
  for_each_tensor([&n](const std::string&, const Eigen::MatrixXd& m) {
    n += static_cast<std::size_t>(m.size());
  });
  return n;
}

Activations forward(const ModelParams& params, std::span<const Encoding> chunks,
                    bool train_mode, std::uint64_t rng_seed) {
  const EncoderConfig& cfg = params.config;
  cfg.validate();

  std::size_t max_chunk = 1;
  for (const auto& enc : chunks) max_chunk = std::max(max_chunk, enc.size());
  if (max_chunk > static_cast<std::size_t>(cfg.max_positions)) {
    raise(ErrorCode::PositionOverflow,
          "chunk of " + std::to_string(max_chunk) + " tokens exceeds the " +
              std::to_string(cfg.max_positions) + " learned positions");
  }
  const auto T = static_cast<Eigen::Index>(max_chunk);
  const int d = cfg.model_dim;
  const int heads = cfg.num_heads;
  const int dk = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dk));

  Activations acts;
  acts.params_version = params.version;
  acts.dropout_active = train_mode && cfg.head_dropout > 0.0;
  std::mt19937_64 drop_rng(mix_seed(rng_seed, "head_dropout"));
  const double keep_scale =
      acts.dropout_active ? 1.0 / (1.0 - cfg.head_dropout) : 1.0;

  for (const auto& enc : chunks) {
    ChunkCache cc;
    cc.real_len = enc.size();
    cc.token_ids.assign(enc.token_ids.begin(), enc.token_ids.end());
    cc.token_ids.resize(max_chunk, Vocabulary::kPadId);

    cc.x0.resize(T, d);
    for (Eigen::Index t = 0; t < T; ++t) {
      const int id = cc.token_ids[static_cast<std::size_t>(t)];
      if (id < 0 || id >= cfg.vocab_size) {
        raise(ErrorCode::ShapeMismatch,
              "token id " + std::to_string(id) + " is outside the " +
                  std::to_string(cfg.vocab_size) + "-entry embedding table");
      }
      cc.x0.row(t) = params.token_embed.row(id) + params.pos_embed.row(t);
    }

    Eigen::MatrixXd x = cc.x0;
    for (const auto& lay : params.layers) {
      LayerCache lc;
      lc.x_in = x;
      lc.q = (x * lay.wq).rowwise() + lay.bq.row(0);
      lc.k = (x * lay.wk).rowwise() + lay.bk.row(0);
      lc.v = (x * lay.wv).rowwise() + lay.bv.row(0);
      lc.context.resize(T, d);
      lc.probs.reserve(static_cast<std::size_t>(heads));
      for (int h = 0; h < heads; ++h) {
        const auto qh = lc.q.block(0, h * dk, T, dk);
        const auto kh = lc.k.block(0, h * dk, T, dk);
        const auto vh = lc.v.block(0, h * dk, T, dk);
        Eigen::MatrixXd scores = qh * kh.transpose() * scale;
        for (Eigen::Index j = static_cast<Eigen::Index>(enc.size()); j < T;
             ++j) {
          scores.col(j).array() += kAttentionMaskValue;
        }
        Eigen::MatrixXd probs = softmax_rows(scores);
        lc.context.block(0, h * dk, T, dk) = probs * vh;
        lc.probs.push_back(std::move(probs));
      }
      const Eigen::MatrixXd attn =
          (lc.context * lay.wo).rowwise() + lay.bo.row(0);
      const Eigen::MatrixXd s1 = x + attn;
      layer_norm(s1, lay.ln1_gamma, lay.ln1_beta, lc.y1, lc.ln1_xhat,
                 lc.ln1_istd);
      lc.u = (lc.y1 * lay.w1).rowwise() + lay.b1.row(0);
      lc.g = lc.u.unaryExpr([](double v) { return gelu_scalar(v); });
      const Eigen::MatrixXd s2 =
          lc.y1 + ((lc.g * lay.w2).rowwise() + lay.b2.row(0));
      layer_norm(s2, lay.ln2_gamma, lay.ln2_beta, lc.y2, lc.ln2_xhat,
                 lc.ln2_istd);
      x = lc.y2;
      cc.layers.push_back(std::move(lc));
    }
    cc.hidden = x;

    if (acts.dropout_active) {
      cc.drop_casing.resize(T, d);
      cc.drop_punct.resize(T, d);
      for (Eigen::Index t = 0; t < T; ++t) {
        for (int c = 0; c < d; ++c) {
          cc.drop_casing(t, c) =
              uniform01(drop_rng) >= cfg.head_dropout ? keep_scale : 0.0;
        }
      }
      for (Eigen::Index t = 0; t < T; ++t) {
        for (int c = 0; c < d; ++c) {
          cc.drop_punct(t, c) =
              uniform01(drop_rng) >= cfg.head_dropout ? keep_scale : 0.0;
        }
      }
      cc.casing_logits =
          (cc.hidden.cwiseProduct(cc.drop_casing) * params.casing_w)
              .rowwise() +
          params.casing_b.row(0);
      cc.punct_logits =
          (cc.hidden.cwiseProduct(cc.drop_punct) * params.punct_w).rowwise() +
          params.punct_b.row(0);
    } else {
      cc.casing_logits =
          (cc.hidden * params.casing_w).rowwise() + params.casing_b.row(0);
      cc.punct_logits =
          (cc.hidden * params.punct_w).rowwise() + params.punct_b.row(0);
    }
    acts.chunks.push_back(std::move(cc));
  }
  return acts;
}

JointLoss joint_loss(const Activations& acts, const Batch& batch,
                     double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    raise(ErrorCode::InvalidArgument, "lambda must lie in [0, 1]");
  }
  check_batch_shapes(acts, batch);

  std::vector<double> doc_casing(static_cast<std::size_t>(batch.num_docs),
                                 0.0);
  std::vector<double> doc_punct(static_cast<std::size_t>(batch.num_docs), 0.0);
  std::size_t supervised = 0;
  for (std::size_t c = 0; c < batch.chunks.size(); ++c) {
    const auto& enc = batch.chunks[c];
    const auto& lbl = batch.labels[c];
    const auto& cc = acts.chunks[c];
    const auto doc = static_cast<std::size_t>(batch.chunk_doc[c]);
    for (std::size_t t = 0; t < enc.size(); ++t) {
      const auto row = static_cast<Eigen::Index>(t);
      if (supervised_casing(enc, lbl, t)) {
        if (lbl.casing[t] < 0 || lbl.casing[t] >= kNumCasingLabels) {
          raise(ErrorCode::UnknownLabel,
                "casing label " + std::to_string(lbl.casing[t]));
        }
        doc_casing[doc] += nll_row(cc.casing_logits, row, lbl.casing[t]);
        ++supervised;
      }
      if (supervised_punct(enc, lbl, t)) {
        if (lbl.punct[t] < 0 || lbl.punct[t] >= kNumPunctLabels) {
          raise(ErrorCode::UnknownLabel,
                "punctuation label " + std::to_string(lbl.punct[t]));
        }
        doc_punct[doc] += nll_row(cc.punct_logits, row, lbl.punct[t]);
        ++supervised;
      }
    }
  }
  if (supervised == 0) {
    raise(ErrorCode::NoSupervisedTokens,
          "no first-subword position carries a label in either task");
  }

  JointLoss loss;
  loss.lambda = lambda;
  for (double v : doc_casing) loss.ce_casing += v;
  for (double v : doc_punct) loss.ce_punct += v;
  loss.ce_casing /= static_cast<double>(batch.num_docs);
  loss.ce_punct /= static_cast<double>(batch.num_docs);
  loss.joint = lambda * loss.ce_casing + (1.0 - lambda) * loss.ce_punct;
  return loss;
}

Gradients backward(const ModelParams& params, const Batch& batch,
                   double lambda, const Activations& acts) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    raise(ErrorCode::InvalidArgument, "lambda must lie in [0, 1]");
  }
  if (acts.params_version != params.version) {
    raise(ErrorCode::StaleActivations,
          "activations were computed at parameter version " +
              std::to_string(acts.params_version) + " but parameters are at " +
              std::to_string(params.version));
  }
  check_batch_shapes(acts, batch);

  std::size_t supervised = 0;
  for (std::size_t c = 0; c < batch.chunks.size(); ++c) {
    const auto& enc = batch.chunks[c];
    const auto& lbl = batch.labels[c];
    for (std::size_t t = 0; t < enc.size(); ++t) {
      if (supervised_casing(enc, lbl, t)) ++supervised;
      if (supervised_punct(enc, lbl, t)) ++supervised;
    }
  }
  if (supervised == 0) {
    raise(ErrorCode::NoSupervisedTokens,
          "no first-subword position carries a label in either task");
  }

  const EncoderConfig& cfg = params.config;
  const int d = cfg.model_dim;
  const int heads = cfg.num_heads;
  const int dk = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dk));
  const double inv_docs = 1.0 / static_cast<double>(batch.num_docs);

  Gradients grads = ModelParams::zeros_like(params);

  for (std::size_t c = 0; c < batch.chunks.size(); ++c) {
    const auto& enc = batch.chunks[c];
    const auto& lbl = batch.labels[c];
    const auto& cc = acts.chunks[c];
    const auto T = static_cast<Eigen::Index>(cc.token_ids.size());

    Eigen::MatrixXd dlog_c = Eigen::MatrixXd::Zero(T, kNumCasingLabels);
    Eigen::MatrixXd dlog_p = Eigen::MatrixXd::Zero(T, kNumPunctLabels);
    for (std::size_t t = 0; t < enc.size(); ++t) {
      const auto row = static_cast<Eigen::Index>(t);
      if (supervised_casing(enc, lbl, t)) {
        Eigen::MatrixXd p = softmax_rows(cc.casing_logits.row(row));
        p(0, lbl.casing[t]) -= 1.0;
        dlog_c.row(row) = (lambda * inv_docs) * p.row(0);
      }
      if (supervised_punct(enc, lbl, t)) {
        Eigen::MatrixXd p = softmax_rows(cc.punct_logits.row(row));
        p(0, lbl.punct[t]) -= 1.0;
        dlog_p.row(row) = ((1.0 - lambda) * inv_docs) * p.row(0);
      }
    }

    Eigen::MatrixXd dh;
    if (acts.dropout_active) {
      grads.casing_w +=
          cc.hidden.cwiseProduct(cc.drop_casing).transpose() * dlog_c;
      grads.punct_w +=
          cc.hidden.cwiseProduct(cc.drop_punct).transpose() * dlog_p;
      dh = (dlog_c * params.casing_w.transpose()).cwiseProduct(cc.drop_casing) +
           (dlog_p * params.punct_w.transpose()).cwiseProduct(cc.drop_punct);
    } else {
      grads.casing_w += cc.hidden.transpose() * dlog_c;
      grads.punct_w += cc.hidden.transpose() * dlog_p;
      dh = dlog_c * params.casing_w.transpose() +
           dlog_p * params.punct_w.transpose();
    }
    grads.casing_b += dlog_c.colwise().sum();
    grads.punct_b += dlog_p.colwise().sum();

    Eigen::MatrixXd dy = dh;
    for (int l = cfg.num_layers - 1; l >= 0; --l) {
      const auto& lay = params.layers[static_cast<std::size_t>(l)];
      auto& glay = grads.layers[static_cast<std::size_t>(l)];
      const auto& lc = cc.layers[static_cast<std::size_t>(l)];

      const Eigen::MatrixXd ds2 = layer_norm_backward(
          dy, lc.ln2_xhat, lc.ln2_istd, lay.ln2_gamma, glay.ln2_gamma,
          glay.ln2_beta);
      glay.w2 += lc.g.transpose() * ds2;
      glay.b2 += ds2.colwise().sum();
      const Eigen::MatrixXd dg = ds2 * lay.w2.transpose();
      const Eigen::MatrixXd du = dg.cwiseProduct(
          lc.u.unaryExpr([](double v) { return gelu_grad_scalar(v); }));
      glay.w1 += lc.y1.transpose() * du;
      glay.b1 += du.colwise().sum();
      const Eigen::MatrixXd dy1 = ds2 + du * lay.w1.transpose();

      const Eigen::MatrixXd ds1 = layer_norm_backward(
          dy1, lc.ln1_xhat, lc.ln1_istd, lay.ln1_gamma, glay.ln1_gamma,
          glay.ln1_beta);
      glay.wo += lc.context.transpose() * ds1;
      glay.bo += ds1.colwise().sum();
      const Eigen::MatrixXd dctx = ds1 * lay.wo.transpose();

      Eigen::MatrixXd dq = Eigen::MatrixXd::Zero(T, d);
      Eigen::MatrixXd dkk = Eigen::MatrixXd::Zero(T, d);
      Eigen::MatrixXd dv = Eigen::MatrixXd::Zero(T, d);
      for (int h = 0; h < heads; ++h) {
        const auto& probs = lc.probs[static_cast<std::size_t>(h)];
        const auto qh = lc.q.block(0, h * dk, T, dk);
        const auto kh = lc.k.block(0, h * dk, T, dk);
        const auto vh = lc.v.block(0, h * dk, T, dk);
        const auto dctxh = dctx.block(0, h * dk, T, dk);
        const Eigen::MatrixXd dp = dctxh * vh.transpose();
        dv.block(0, h * dk, T, dk) = probs.transpose() * dctxh;
        const Eigen::VectorXd rowdot =
            dp.cwiseProduct(probs).rowwise().sum();
        const Eigen::MatrixXd ds =
            probs.cwiseProduct(dp.colwise() - rowdot);
        dq.block(0, h * dk, T, dk) = ds * kh * scale;
        dkk.block(0, h * dk, T, dk) = ds.transpose() * qh * scale;
      }
      glay.wq += lc.x_in.transpose() * dq;
      glay.bq += dq.colwise().sum();
      glay.wk += lc.x_in.transpose() * dkk;
      glay.bk += dkk.colwise().sum();
      glay.wv += lc.x_in.transpose() * dv;
      glay.bv += dv.colwise().sum();

      dy = ds1 + dq * lay.wq.transpose() + dkk * lay.wk.transpose() +
           dv * lay.wv.transpose();
    }

    for (Eigen::Index t = 0; t < T; ++t) {
      grads.token_embed.row(cc.token_ids[static_cast<std::size_t>(t)]) +=
          dy.row(t);
      grads.pos_embed.row(t) += dy.row(t);
    }
  }
  return grads;
}

Prediction predict(const ModelParams& params,
                   std::span<const std::string> words, const Vocabulary& vocab,
                   std::size_t max_len) {
  if (vocab.size() != params.config.vocab_size) {
    raise(ErrorCode::VocabularyMismatch,
          "vocabulary has " + std::to_string(vocab.size()) +
              " tokens but the model embeds " +
              std::to_string(params.config.vocab_size));
  }
  Prediction out;
  if (words.empty()) return out;

  const auto chunks = encode(words, vocab, max_len);
  const Activations acts = forward(params, chunks, false, 0);

  out.casing.assign(words.size(), CasingLabel::LC);
  out.punct.assign(words.size(), PunctLabel::Blank);
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    const auto& enc = chunks[c];
    const auto& cc = acts.chunks[c];
    for (std::size_t t = 0; t < enc.size(); ++t) {
      if (!enc.first_subword[t]) continue;
      const auto w = static_cast<std::size_t>(enc.word_index[t]);
      const auto row = static_cast<Eigen::Index>(t);
      out.casing[w] =
          static_cast<CasingLabel>(argmax_lowest(cc.casing_logits, row));
      out.punct[w] =
          static_cast<PunctLabel>(argmax_lowest(cc.punct_logits, row));
    }
  }
  return out;
}

}  // namespace casepunct
