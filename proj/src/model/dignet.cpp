#include "lginet/model/dignet.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "lginet/errors.hpp"
#include "lginet/graphs/syntax_graph.hpp"
#include "lginet/numcore/ops.hpp"

namespace lginet {

namespace {

constexpr double kEmbeddingInitRange = 0.1;

Tensor glorot(Rng& rng, std::size_t fan_in, std::size_t fan_out) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  Tensor t({fan_in, fan_out});
  for (double& v : t.mutable_data()) v = rng.uniform(-limit, limit);
  return t;
}

Tensor uniform_table(Rng& rng, std::size_t rows, std::size_t cols, double range) {
  Tensor t({rows, cols});
  for (double& v : t.mutable_data()) v = rng.uniform(-range, range);
  return t;
}

Tensor maybe_dropout(const Tensor& x, double rate, const ForwardOptions& options) {
  if (!options.training || rate == 0.0) return x;
  if (options.rng == nullptr) throw ContractError("forward: training with dropout needs a random stream");
  return ops::dropout(x, rate, *options.rng);
}

}  // namespace

std::size_t argmax(std::span<const double> values) {
  if (values.empty()) throw ContractError("argmax of an empty sequence");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

DigNet::DigNet(ModelConfig config, WordVocab words, std::shared_ptr<const RelationVocab> relations,
               std::uint64_t seed)
    : config_(std::move(config)), words_(std::move(words)), relations_(std::move(relations)) {
  config_.validate();
  if (words_.size() <= 1) throw ConfigError("model: word vocabulary is empty");
  if (!relations_ || relations_->size() == 0) throw ConfigError("model: relation vocabulary is empty");
  if (relations_->max_bucket() != config_.max_bucket) {
    throw ConfigError("model: relation vocabulary caps distances at " + std::to_string(relations_->max_bucket()) +
                      " but the config says " + std::to_string(config_.max_bucket));
  }
  Rng rng(seed);
  build_parameters(rng);
}

void DigNet::build_parameters(Rng& rng) {
  const std::size_t d = config_.d_hidden;
  const std::size_t d_rel = config_.d_rel;
  auto weight = [&](const std::string& name, std::size_t in, std::size_t out) {
    return store_.add(name, glorot(rng, in, out));
  };
  auto bias = [&](const std::string& name, std::size_t size) { return store_.add(name, Tensor({size})); };

  word_embedding_ = store_.add("embed.word", uniform_table(rng, words_.size(), config_.d_embed, kEmbeddingInitRange));
  proj_weight_ = weight("encoder.proj.weight", config_.d_embed, d);
  proj_bias_ = bias("encoder.proj.bias", d);
  if (config_.uses_relation()) {
    relation_embedding_ = store_.add("relation.embed", uniform_table(rng, relations_->size(), d_rel, kEmbeddingInitRange));
  }

  layers_.assign(config_.L_lgi, {});
  for (std::size_t l = 0; l < config_.L_lgi; ++l) {
    LgiLayerParams& layer = layers_[l];
    const std::string prefix = "lgi" + std::to_string(l) + ".";
    if (config_.uses_syntax()) {
      for (std::size_t k = 0; k < config_.L_gcn; ++k) {
        const std::string p = prefix + "gcn" + std::to_string(k) + ".";
        layer.gcn.push_back({weight(p + "weight", d, d), bias(p + "bias", d)});
      }
    }
    if (config_.uses_relation()) {
      R2atnParams r;
      const std::string p = prefix + "r2atn.";
      r.ffn_w1 = weight(p + "ffn.w1", d_rel, d_rel);
      r.ffn_b1 = bias(p + "ffn.b1", d_rel);
      r.ffn_w2 = weight(p + "ffn.w2", d_rel, config_.n_heads_rel);
      r.ffn_b2 = bias(p + "ffn.b2", config_.n_heads_rel);
      for (std::size_t m = 0; m < config_.n_heads_rel; ++m)
        r.heads.push_back(weight(p + "head" + std::to_string(m) + ".weight", d, d));
      layer.r2atn = std::move(r);
    }
    if (!config_.uses_cgmp()) continue;
    for (const char* direction : {"y2x", "x2y"}) {
      const std::string p = prefix + "cgmp." + direction + ".";
      CgmpParams c;
      switch (config_.cgmp_variant) {
        case CgmpVariant::kGate:
          c.gate = GateParams{weight(p + "gate.weight", 2 * d, d)};
          break;
        case CgmpVariant::kMlp: {
          MlpParams m;
          m.w1 = weight(p + "mlp.w1", 2 * d, d);
          m.b1 = bias(p + "mlp.b1", d);
          m.w2 = weight(p + "mlp.w2", d, d);
          m.b2 = bias(p + "mlp.b2", d);
          c.mlp = std::move(m);
          break;
        }
        case CgmpVariant::kMha: {
          MhaParams m;
          m.wq = weight(p + "mha.wq", d, d);
          m.bq = bias(p + "mha.bq", d);
          m.wk = weight(p + "mha.wk", d, d);
          m.bk = bias(p + "mha.bk", d);
          m.wv = weight(p + "mha.wv", d, d);
          m.bv = bias(p + "mha.bv", d);
          m.heads = config_.n_heads_mha;
          c.mha = std::move(m);
          break;
        }
      }
      (std::string(direction) == "y2x" ? layer.y2x : layer.x2y) = std::move(c);
    }
  }

  if (config_.fuses_streams()) fuse_weight_ = weight("decoder.fuse.weight", 2 * d, d);
  if (config_.ablation != Ablation::kNoFa2c) a2c_ = Fa2cParams{weight("decoder.a2c.weight", d, d), bias("decoder.a2c.bias", d)};
  classifier_.w1 = weight("decoder.mlp.w1", d, d);
  classifier_.b1 = bias("decoder.mlp.b1", d);
  const auto classes = static_cast<std::size_t>(kNumClasses);
  classifier_.w2 = weight("decoder.mlp.w2", d, classes);
  classifier_.b2 = bias("decoder.mlp.b2", classes);
}

ModelInput DigNet::prepare(const ParseSample& sample) const {
  validate_sample(sample, false);
  ModelInput input;
  input.lgig = build_lgig(sample, config_.interactive_mode(), relations_, config_.max_bucket);
  input.token_ids.reserve(sample.size());
  for (const std::string& token : sample.tokens) input.token_ids.push_back(words_.id(token));
  input.aspect_begin = sample.aspect_begin;
  input.aspect_end = sample.aspect_end;
  input.label = sample.label;
  return input;
}

std::vector<ModelInput> DigNet::prepare(const std::vector<ParseSample>& samples) const {
  std::vector<ModelInput> out;
  out.reserve(samples.size());
  for (const ParseSample& s : samples) out.push_back(prepare(s));
  return out;
}

EncodedSample DigNet::encode(const ModelInput& input, const ForwardOptions& options) const {
  const std::size_t n_tokens = input.token_ids.size();
  const std::size_t n = input.lgig.n();
  if (input.aspect_end <= input.aspect_begin || input.aspect_end > n_tokens ||
      n != n_tokens - (input.aspect_end - input.aspect_begin) + 1 || input.lgig.tau() != input.aspect_begin) {
    throw ContractError("encode: token ids and LGIG disagree on the aspect span");
  }
  for (std::size_t id : input.token_ids)
    if (id >= words_.size()) throw ContractError("encode: token id " + std::to_string(id) + " outside the vocabulary");

  const Tensor projected = ops::linear(ops::gather_rows(word_embedding_, input.token_ids), proj_weight_, proj_bias_);

  // Node i collects token i outside the aspect; row tau averages the aspect tokens.
  Tensor collapse({n, n_tokens});
  auto c = collapse.mutable_data();
  const double share = 1.0 / static_cast<double>(input.aspect_end - input.aspect_begin);
  for (std::size_t t = 0; t < n_tokens; ++t) {
    const bool in_aspect = t >= input.aspect_begin && t < input.aspect_end;
    const std::size_t node = in_aspect ? input.aspect_begin : merged_index(t, input.aspect_begin, input.aspect_end);
    c[node * n_tokens + t] = in_aspect ? share : 1.0;
  }
  return {maybe_dropout(ops::matmul(collapse, projected), config_.dropout_enc, options), input.lgig.tau()};
}

GraphContext DigNet::graph_context(const ModelInput& input) const {
  GraphContext graph;
  graph.tau = input.lgig.tau();
  if (config_.uses_syntax()) {
    graph.a_norm = normalized_adjacency(input.lgig.syntax);
    graph.w_p = position_weights(input.lgig.n(), graph.tau);
  }
  if (config_.uses_relation()) {
    graph.rel = input.lgig.relation.rel;
    graph.relation_embedding = relation_embedding_;
  }
  return graph;
}

ForwardResult DigNet::forward(const ModelInput& input, const ForwardOptions& options) const {
  const EncodedSample encoded = encode(input, options);
  const GraphContext graph = graph_context(input);
  const std::size_t tau = encoded.tau;

  LgiState state{config_.uses_syntax() ? encoded.h0 : Tensor(), config_.uses_relation() ? encoded.h0 : Tensor()};
  for (const LgiLayerParams& layer : layers_) {
    state = lgi_layer(state, graph, layer);
    if (state.hx.defined()) state.hx = maybe_dropout(state.hx, config_.dropout_other, options);
    if (state.hy.defined()) state.hy = maybe_dropout(state.hy, config_.dropout_other, options);
  }
  const Tensor& hx = state.hx;
  const Tensor& hy = state.hy;

  ForwardResult result;
  result.tau = tau;
  if (fuse_weight_) {
    result.h_f = ops::linear(ops::concat_cols({hx, hy}), *fuse_weight_);
  } else if (config_.uses_syntax() && config_.ablation != Ablation::kRelationDecoder) {
    result.h_f = hx;
  } else {
    result.h_f = hy;
  }

  Tensor r;
  if (a2c_) {
    Fa2cOutput attention = fa2c_attention(result.h_f, tau, *a2c_);
    r = attention.r;
    result.beta = attention.beta;
  } else {
    const std::size_t aspect_row[] = {tau};
    r = ops::gather_rows(result.h_f, aspect_row);
  }

  const Tensor hidden = ops::relu(ops::linear(r, classifier_.w1, classifier_.b1));
  result.logits = ops::reshape(ops::linear(hidden, classifier_.w2, classifier_.b2), {static_cast<std::size_t>(kNumClasses)});
  result.probs = ops::softmax(result.logits);
  result.predicted = argmax(result.logits.data());
  return result;
}

}  // namespace lginet
