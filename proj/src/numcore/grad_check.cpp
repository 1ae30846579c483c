#include "lginet/numcore/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lginet/errors.hpp"
#include "lginet/numcore/rng.hpp"

namespace lginet {

namespace {

double evaluate(const std::function<Tensor()>& objective) {
  Tensor loss = objective();
  return loss.item();
}

std::vector<std::size_t> pick_coordinates(std::size_t numel, std::size_t limit, Rng& rng) {
  std::vector<std::size_t> coords(numel);
  for (std::size_t i = 0; i < numel; ++i) coords[i] = i;
  if (limit == 0 || numel <= limit) return coords;
  rng.shuffle(coords);
  coords.resize(limit);
  std::sort(coords.begin(), coords.end());
  return coords;
}

}  // namespace

GradCheckResult grad_check(const std::function<Tensor()>& objective, ParamStore& store,
                           const GradCheckOptions& options) {
  const double first = evaluate(objective);
  const double second = evaluate(objective);
  if (first != second) {
    throw OracleError("grad_check: objective is not deterministic (" + std::to_string(first) +
                      " vs " + std::to_string(second) + ")");
  }

  store.zero_grad();
  {
    Tape tape;
    TapeScope scope(tape);
    Tensor loss = objective();
    tape.backward(loss);
  }

  GradCheckResult result;
  Rng rng(options.seed);
  for (auto& [name, param] : store) {
    const std::vector<double> analytic(param.grad().begin(), param.grad().end());
    auto values = param.mutable_data();
    for (std::size_t idx : pick_coordinates(param.numel(), options.max_coords_per_param, rng)) {
      const double saved = values[idx];
      values[idx] = saved + options.eps;
      const double plus = evaluate(objective);
      values[idx] = saved - options.eps;
      const double minus = evaluate(objective);
      values[idx] = saved;

      const double numeric = (plus - minus) / (2.0 * options.eps);
      const double a = analytic[idx];
      const double denom = std::max({1.0, std::abs(a), std::abs(numeric)});
      const double err = std::abs(a - numeric) / denom;
      ++result.coords_checked;
      if (!(err <= result.max_rel_error)) {
        result.max_rel_error = std::isnan(err) ? std::numeric_limits<double>::infinity() : err;
        result.worst_param = name;
        result.worst_index = idx;
        result.worst_analytic = a;
        result.worst_numeric = numeric;
      }
    }
  }
  return result;
}

}  // namespace lginet
