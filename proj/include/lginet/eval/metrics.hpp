#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lginet {

// counts[gold][pred].
struct ConfusionMatrix {
  std::size_t n_classes = 0;
  std::vector<std::size_t> counts;

  std::size_t at(std::size_t gold, std::size_t pred) const { return counts[gold * n_classes + pred]; }
  std::size_t total() const;
  bool operator==(const ConfusionMatrix&) const = default;
};

// All three throw ContractError on empty input, length mismatch, or a label
// outside [0, n_classes).
ConfusionMatrix confusion_matrix(std::span<const std::size_t> preds, std::span<const std::size_t> golds,
                                 std::size_t n_classes = 3);

double accuracy(std::span<const std::size_t> preds, std::span<const std::size_t> golds);

// Unweighted mean of per-class F1. Classes that appear in neither preds nor
// golds are left out of the mean; zero precision or recall denominators count as 0.
double macro_f1(std::span<const std::size_t> preds, std::span<const std::size_t> golds, std::size_t n_classes = 3);
double macro_f1(const ConfusionMatrix& cm);

}  // namespace lginet
