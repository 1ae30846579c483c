#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "lginet/numcore/param_store.hpp"

namespace lginet {

struct AdamWOptions {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.0;
};

// Adam with decoupled weight decay: w <- w (1 - lr wd), then the
// bias-corrected moment update. Moments are kept per parameter name.
class AdamW {
 public:
  explicit AdamW(AdamWOptions options) : options_(options) {}

  // Uses the gradients currently stored on `store`; a parameter without a
  // gradient buffer counts as zero gradient. A NaN or infinite gradient
  // throws NumericError naming the parameter, before anything is updated.
  void step(ParamStore& store);

  std::size_t steps() const { return t_; }
  const AdamWOptions& options() const { return options_; }

 private:
  struct Moments {
    std::vector<double> m, v;
  };
  AdamWOptions options_;
  std::size_t t_ = 0;
  std::unordered_map<std::string, Moments> moments_;
};

}  // namespace lginet
