#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lginet/graphs/lgig.hpp"
#include "lginet/graphs/parse_sample.hpp"
#include "lginet/graphs/relation_graph.hpp"
#include "lginet/model/config.hpp"
#include "lginet/model/layers.hpp"
#include "lginet/model/word_vocab.hpp"
#include "lginet/numcore/param_store.hpp"
#include "lginet/numcore/rng.hpp"
#include "lginet/numcore/tensor.hpp"

namespace lginet {

// A parse prepared for the network: its LGIG plus token ids.
struct ModelInput {
  LGIG lgig;
  std::vector<std::size_t> token_ids;
  std::size_t aspect_begin = 0;
  std::size_t aspect_end = 0;
  int label = kNoLabel;
};

struct EncodedSample {
  Tensor h0;  // [n, d_hidden]
  std::size_t tau = 0;
};

struct ForwardOptions {
  bool training = false;
  // Dropout stream; required when training with a non-zero rate.
  Rng* rng = nullptr;
};

struct ForwardResult {
  Tensor logits;  // [3]
  Tensor probs;   // [3]
  Tensor h_f;     // [n, d_hidden]
  Tensor beta;    // [n, 1]; undefined without aspect-to-context attention
  std::size_t tau = 0;
  std::size_t predicted = 0;
};

// Lowest index wins ties.
std::size_t argmax(std::span<const double> values);

class DigNet {
 public:
  // Registers and initializes every parameter the configuration needs.
  DigNet(ModelConfig config, WordVocab words, std::shared_ptr<const RelationVocab> relations, std::uint64_t seed);

  const ModelConfig& config() const { return config_; }
  const WordVocab& words() const { return words_; }
  const std::shared_ptr<const RelationVocab>& relations() const { return relations_; }

  ParamStore& params() { return store_; }
  const ParamStore& params() const { return store_; }

  // Builds the LGIG with the model's relation vocabulary and interactive mode.
  ModelInput prepare(const ParseSample& sample) const;
  std::vector<ModelInput> prepare(const std::vector<ParseSample>& samples) const;

  EncodedSample encode(const ModelInput& input, const ForwardOptions& options = {}) const;
  ForwardResult forward(const ModelInput& input, const ForwardOptions& options = {}) const;
  std::size_t predict(const ModelInput& input) const { return forward(input).predicted; }

  // Graph constants for `input`, as consumed by every LGI layer.
  GraphContext graph_context(const ModelInput& input) const;
  const std::vector<LgiLayerParams>& layers() const { return layers_; }

 private:
  void build_parameters(Rng& rng);

  ModelConfig config_;
  WordVocab words_;
  std::shared_ptr<const RelationVocab> relations_;
  ParamStore store_;

  Tensor word_embedding_;
  Tensor proj_weight_, proj_bias_;
  Tensor relation_embedding_;
  std::vector<LgiLayerParams> layers_;
  std::optional<Tensor> fuse_weight_;
  std::optional<Fa2cParams> a2c_;
  MlpParams classifier_;
};

}  // namespace lginet
