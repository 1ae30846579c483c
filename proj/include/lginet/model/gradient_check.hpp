#pragma once

#include <cstddef>
#include <cstdint>

#include "lginet/graphs/parse_sample.hpp"
#include "lginet/model/config.hpp"
#include "lginet/numcore/grad_check.hpp"
#include "lginet/numcore/rng.hpp"

namespace lginet {

struct ModelGradCheckOptions {
  std::size_t n_nodes = 6;       // merged graph size
  std::size_t aspect_tokens = 2;
  std::uint64_t seed = 0;
  double eps = 1e-6;
  // Parameters are redrawn uniformly in +-range so activations sit well away
  // from ReLU kinks, where central differences are meaningless.
  double param_range = 0.5;
  std::size_t max_coords_per_param = 0;
};

// Random dependency tree whose merged graph has `n_nodes` nodes.
ParseSample random_parse(Rng& rng, std::size_t n_nodes, std::size_t aspect_tokens);

// Cross-entropy of one random sample, analytic vs central differences over
// every parameter, dropout off, 64-bit.
GradCheckResult check_model_gradients(const ModelConfig& config, const ModelGradCheckOptions& options = {});

}  // namespace lginet
