#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "lginet/numcore/param_store.hpp"
#include "lginet/numcore/tensor.hpp"

namespace lginet {

struct GradCheckOptions {
  double eps = 1e-5;
  // Coordinates checked per parameter tensor; tensors at or under the limit
  // are checked exhaustively. 0 means check everything.
  std::size_t max_coords_per_param = 0;
  std::uint64_t seed = 0;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_param;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t coords_checked = 0;
};

// Compares reverse-mode gradients of `objective` against central differences
// over the parameters in `store`. The per-coordinate error is
// |analytic - numeric| / max(1, |analytic|, |numeric|).
// `objective` must build a scalar loss from the current store values; it is
// called under a tape for the analytic pass and without one for the probes.
// Throws OracleError if two identical evaluations disagree.
GradCheckResult grad_check(const std::function<Tensor()>& objective, ParamStore& store,
                           const GradCheckOptions& options = {});

}  // namespace lginet
