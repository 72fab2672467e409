#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "casepunct/encoding.hpp"
#include "casepunct/labels.hpp"
#include "casepunct/vocab.hpp"

namespace casepunct {

inline constexpr double kLayerNormEps = 1e-5;
inline constexpr double kAttentionMaskValue = -1e30;

struct EncoderConfig {
  int num_layers = 2;
  int model_dim = 64;
  int num_heads = 4;
  int ffn_dim = 256;
  int max_positions = 128;
  double head_dropout = 0.1;
  int vocab_size = 0;

  void validate() const;
  bool operator==(const EncoderConfig&) const = default;
};

struct LayerParams {
  Eigen::MatrixXd wq, wk, wv, wo;       // [d x d]
  Eigen::MatrixXd bq, bk, bv, bo;       // [1 x d]
  Eigen::MatrixXd ln1_gamma, ln1_beta;  // [1 x d]
  Eigen::MatrixXd w1;                   // [d x f]
  Eigen::MatrixXd b1;                   // [1 x f]
  Eigen::MatrixXd w2;                   // [f x d]
  Eigen::MatrixXd b2;                   // [1 x d]
  Eigen::MatrixXd ln2_gamma, ln2_beta;  // [1 x d]
};

// All learnable tensors. Biases and layer-norm parameters are stored as
// [1 x n] matrices so every tensor is uniformly an Eigen::MatrixXd, which
// keeps the optimizer, checkpointing and gradient checks generic.
struct ModelParams {
  EncoderConfig config;
  Eigen::MatrixXd token_embed;  // [vocab_size x d]
  Eigen::MatrixXd pos_embed;    // [max_positions x d]
  std::vector<LayerParams> layers;
  Eigen::MatrixXd casing_w;  // [d x 3]
  Eigen::MatrixXd casing_b;  // [1 x 3]
  Eigen::MatrixXd punct_w;   // [d x 8]
  Eigen::MatrixXd punct_b;   // [1 x 8]

  // Bumped by every in-place update; forward stamps it into its activation
  // cache so backward can reject caches computed from older parameters.
  std::uint64_t version = 0;

  static ModelParams shaped(const EncoderConfig& config);
  static ModelParams init(const EncoderConfig& config, std::uint64_t seed);
  static ModelParams zeros_like(const ModelParams& other);

  std::size_t num_parameters() const;
  void bump_version() { ++version; }

  // Visits every tensor in a fixed, documented order with a stable name.
  template <typename Fn>
  void for_each_tensor(Fn&& fn) {
    visit(*this, fn);
  }
  template <typename Fn>
  void for_each_tensor(Fn&& fn) const {
    visit(*this, fn);
  }

 private:
  template <typename Self, typename Fn>
  static void visit(Self& self, Fn& fn) {
    fn(std::string("token_embed"), self.token_embed);
    fn(std::string("pos_embed"), self.pos_embed);
    for (std::size_t l = 0; l < self.layers.size(); ++l) {
      auto& lay = self.layers[l];
      const std::string p = "layer" + std::to_string(l) + ".";
      fn(p + "wq", lay.wq);
      fn(p + "bq", lay.bq);
      fn(p + "wk", lay.wk);
      fn(p + "bk", lay.bk);
      fn(p + "wv", lay.wv);
      fn(p + "bv", lay.bv);
      fn(p + "wo", lay.wo);
      fn(p + "bo", lay.bo);
      fn(p + "ln1_gamma", lay.ln1_gamma);
      fn(p + "ln1_beta", lay.ln1_beta);
      fn(p + "w1", lay.w1);
      fn(p + "b1", lay.b1);
      fn(p + "w2", lay.w2);
      fn(p + "b2", lay.b2);
      fn(p + "ln2_gamma", lay.ln2_gamma);
      fn(p + "ln2_beta", lay.ln2_beta);
    }
    fn(std::string("casing_head.w"), self.casing_w);
    fn(std::string("casing_head.b"), self.casing_b);
    fn(std::string("punct_head.w"), self.punct_w);
    fn(std::string("punct_head.b"), self.punct_b);
  }
};

using Gradients = ModelParams;

struct LayerCache {
  Eigen::MatrixXd x_in;                 // [T x d] layer input
  Eigen::MatrixXd q, k, v;              // [T x d]
  std::vector<Eigen::MatrixXd> probs;   // per head, [T x T] attention rows
  Eigen::MatrixXd context;              // [T x d] concatenated head outputs
  Eigen::MatrixXd ln1_xhat;             // [T x d]
  Eigen::VectorXd ln1_istd;             // [T]
  Eigen::MatrixXd y1;                   // [T x d] output of first sublayer
  Eigen::MatrixXd u;                    // [T x f] FFN pre-activation
  Eigen::MatrixXd g;                    // [T x f] gelu(u)
  Eigen::MatrixXd ln2_xhat;             // [T x d]
  Eigen::VectorXd ln2_istd;             // [T]
  Eigen::MatrixXd y2;                   // [T x d] layer output
};

struct ChunkCache {
  std::vector<int> token_ids;  // padded to the batch length with PAD
  std::size_t real_len = 0;    // tokens before padding
  Eigen::MatrixXd x0;          // [T x d] embedding sum
  std::vector<LayerCache> layers;
  Eigen::MatrixXd hidden;        // [T x d] encoder output
  Eigen::MatrixXd drop_casing;   // [T x d] scaled keep mask; empty when unused
  Eigen::MatrixXd drop_punct;    // [T x d]
  Eigen::MatrixXd casing_logits;  // [T x 3]
  Eigen::MatrixXd punct_logits;   // [T x 8]
};

struct Activations {
  std::uint64_t params_version = 0;
  bool dropout_active = false;
  std::vector<ChunkCache> chunks;
};

// Runs the encoder and both heads over every chunk; chunks are padded to a
// common length and PAD positions are masked out of attention.
Activations forward(const ModelParams& params, std::span<const Encoding> chunks,
                    bool train_mode = false, std::uint64_t rng_seed = 0);

struct JointLoss {
  double ce_casing = 0.0;
  double ce_punct = 0.0;
  double lambda = 0.0;
  double joint = 0.0;
};

// Cross entropy summed over supervised (first-subword, non-ignore) positions
// per document, averaged over documents, combined per the lambda weighting.
JointLoss joint_loss(const Activations& acts, const Batch& batch,
                     double lambda);

// Exact reverse-mode gradients of joint_loss w.r.t. every parameter tensor.
Gradients backward(const ModelParams& params, const Batch& batch,
                   double lambda, const Activations& acts);

struct Prediction {
  std::vector<CasingLabel> casing;
  std::vector<PunctLabel> punct;
};

// Argmax labels at each word's first-subword position; ties resolve to the
// lowest class index.
Prediction predict(const ModelParams& params, std::span<const std::string> words,
                   const Vocabulary& vocab, std::size_t max_len);

}  // namespace casepunct
