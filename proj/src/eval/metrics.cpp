#include "lginet/eval/metrics.hpp"

#include <numeric>
#include <string>

#include "lginet/errors.hpp"

namespace lginet {

namespace {

void check_inputs(std::span<const std::size_t> preds, std::span<const std::size_t> golds) {
  if (preds.empty()) throw ContractError("metrics: no predictions");
  if (preds.size() != golds.size()) {
    throw ContractError("metrics: " + std::to_string(preds.size()) + " predictions for " +
                        std::to_string(golds.size()) + " gold labels");
  }
}

}  // namespace

std::size_t ConfusionMatrix::total() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

ConfusionMatrix confusion_matrix(std::span<const std::size_t> preds, std::span<const std::size_t> golds,
                                 std::size_t n_classes) {
  check_inputs(preds, golds);
  if (n_classes == 0) throw ContractError("metrics: n_classes must be positive");
  ConfusionMatrix cm{n_classes, std::vector<std::size_t>(n_classes * n_classes, 0)};
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i] >= n_classes || golds[i] >= n_classes) {
      throw ContractError("metrics: label out of range at index " + std::to_string(i));
    }
    ++cm.counts[golds[i] * n_classes + preds[i]];
  }
  return cm;
}

double accuracy(std::span<const std::size_t> preds, std::span<const std::size_t> golds) {
  check_inputs(preds, golds);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) hits += preds[i] == golds[i];
  return static_cast<double>(hits) / static_cast<double>(preds.size());
}

double macro_f1(const ConfusionMatrix& cm) {
  const std::size_t k = cm.n_classes;
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t predicted = 0, gold = 0;
    for (std::size_t o = 0; o < k; ++o) {
      predicted += cm.at(o, c);
      gold += cm.at(c, o);
    }
    if (predicted == 0 && gold == 0) continue;
    ++used;
    const double tp = static_cast<double>(cm.at(c, c));
    const double p = predicted ? tp / static_cast<double>(predicted) : 0.0;
    const double r = gold ? tp / static_cast<double>(gold) : 0.0;
    if (p + r > 0.0) sum += 2.0 * p * r / (p + r);
  }
  if (used == 0) throw ContractError("metrics: empty confusion matrix");
  return sum / static_cast<double>(used);
}

double macro_f1(std::span<const std::size_t> preds, std::span<const std::size_t> golds, std::size_t n_classes) {
  return macro_f1(confusion_matrix(preds, golds, n_classes));
}

}  // namespace lginet
