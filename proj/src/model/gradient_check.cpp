#include "lginet/model/gradient_check.hpp"

#include <string>
#include <vector>

#include "lginet/errors.hpp"
#include "lginet/graphs/relation_graph.hpp"
#include "lginet/model/dignet.hpp"
#include "lginet/numcore/ops.hpp"

namespace lginet {

ParseSample random_parse(Rng& rng, std::size_t n_nodes, std::size_t aspect_tokens) {
  if (n_nodes < 2 || aspect_tokens < 1) throw ContractError("random_parse: need at least one context node and one aspect token");
  static const char* const kDeprels[] = {"nsubj", "amod", "det", "obj", "advmod", "conj", "case"};
  const std::size_t n = n_nodes + aspect_tokens - 1;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);

  ParseSample s;
  s.tokens.resize(n);
  s.heads.assign(n, kRootHead);
  s.deprels.assign(n, "root");
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t node = order[k];
    s.tokens[node] = "t" + std::to_string(node);
    if (k > 0) {
      s.heads[node] = static_cast<int>(order[rng.index(k)]);
      s.deprels[node] = kDeprels[rng.index(std::size(kDeprels))];
    }
  }
  s.aspect_begin = rng.index(n - aspect_tokens + 1);
  s.aspect_end = s.aspect_begin + aspect_tokens;
  s.label = static_cast<int>(rng.index(kNumClasses));
  return s;
}

GradCheckResult check_model_gradients(const ModelConfig& config, const ModelGradCheckOptions& options) {
  ModelConfig cfg = config;
  cfg.dropout_enc = 0.0;
  cfg.dropout_other = 0.0;
  Rng rng(options.seed);
  const ParseSample sample = random_parse(rng, options.n_nodes, options.aspect_tokens);
  const std::vector<ParseSample> corpus{sample};
  DigNet model(cfg, build_word_vocab(corpus), build_relation_vocab(corpus, cfg.max_bucket), rng.next_u64());
  for (auto& [name, value] : model.params())
    for (double& v : value.mutable_data()) v = rng.uniform(-options.param_range, options.param_range);

  const ModelInput input = model.prepare(sample);
  GradCheckOptions gc;
  gc.eps = options.eps;
  gc.max_coords_per_param = options.max_coords_per_param;
  gc.seed = options.seed;
  const auto label = static_cast<std::size_t>(input.label);
  return grad_check([&] { return ops::cross_entropy(model.forward(input).probs, label); }, model.params(), gc);
}

}  // namespace lginet
