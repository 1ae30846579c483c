#include "lginet/training/optimizer.hpp"

#include <cmath>

#include "lginet/errors.hpp"

namespace lginet {

void AdamW::step(ParamStore& store) {
  for (const auto& [name, param] : store) {
    if (!param.has_grad()) continue;
    const auto grad = param.grad();
    for (std::size_t i = 0; i < grad.size(); ++i) {
      if (!std::isfinite(grad[i])) {
        throw NumericError("AdamW: non-finite gradient in '" + name + "' at index " + std::to_string(i));
      }
    }
  }

  ++t_;
  const double lr = options_.lr;
  const double b1 = options_.beta1;
  const double b2 = options_.beta2;
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(t_));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(t_));
  const double decay = 1.0 - lr * options_.weight_decay;

  for (auto& [name, param] : store) {
    auto values = param.mutable_data();
    Moments& mo = moments_[name];
    if (mo.m.size() != values.size()) {
      mo.m.assign(values.size(), 0.0);
      mo.v.assign(values.size(), 0.0);
    }
    const bool has_grad = param.has_grad();
    const auto grad = has_grad ? param.grad() : std::span<const double>{};
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double g = has_grad ? grad[i] : 0.0;
      values[i] *= decay;
      mo.m[i] = b1 * mo.m[i] + (1.0 - b1) * g;
      mo.v[i] = b2 * mo.v[i] + (1.0 - b2) * g * g;
      const double m_hat = mo.m[i] / correction1;
      const double v_hat = mo.v[i] / correction2;
      values[i] -= lr * m_hat / (std::sqrt(v_hat) + options_.eps);
    }
  }
}

}  // namespace lginet
