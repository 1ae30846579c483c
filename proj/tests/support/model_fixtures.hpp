#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lginet/graphs/relation_graph.hpp"
#include "lginet/model/dignet.hpp"
#include "lginet/numcore/ops.hpp"
#include "support/fixtures.hpp"

namespace lginet::testing {

// Small configuration used by gradient checks: cheap but exercises every head split.
inline ModelConfig tiny_config(CgmpVariant variant = CgmpVariant::kGate, Ablation ablation = Ablation::kNone) {
  ModelConfig cfg;
  cfg.d_embed = 4;
  cfg.d_hidden = 8;
  cfg.d_rel = 4;
  cfg.L_lgi = 2;
  cfg.L_gcn = 2;
  cfg.n_heads_rel = 2;
  cfg.n_heads_mha = 2;
  cfg.cgmp_variant = variant;
  cfg.ablation = ablation;
  return cfg;
}

inline DigNet model_for(const ModelConfig& cfg, const std::vector<ParseSample>& samples, std::uint64_t seed = 1) {
  return DigNet(cfg, build_word_vocab(samples), build_relation_vocab(samples, cfg.max_bucket), seed);
}

// A random tree with exactly n tokens and a single-token aspect, so the merged graph has n nodes.
inline ParseSample random_tree_with_nodes(Rng& rng, std::size_t n) {
  ParseSample s;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  s.tokens.resize(n);
  s.heads.assign(n, kRootHead);
  s.deprels.assign(n, "ROOT");
  static const char* const kLabels[] = {"nsubj", "amod", "det", "obj", "advmod"};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t node = order[k];
    s.tokens[node] = "w" + std::to_string(rng.index(6));
    if (k > 0) {
      s.heads[node] = static_cast<int>(order[rng.index(k)]);
      s.deprels[node] = kLabels[rng.index(5)];
    }
  }
  s.aspect_begin = rng.index(n);
  s.aspect_end = s.aspect_begin + 1;
  s.label = static_cast<int>(rng.index(3));
  return s;
}

inline Tensor sample_loss(const DigNet& model, const ModelInput& input) {
  return ops::cross_entropy(model.forward(input).probs, static_cast<std::size_t>(input.label));
}

}  // namespace lginet::testing
