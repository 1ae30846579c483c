#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "lginet/eval/metrics.hpp"
#include "lginet/model/dignet.hpp"
#include "lginet/training/train_config.hpp"

namespace lginet {

struct EvalResult {
  std::vector<std::size_t> preds;
  std::vector<std::size_t> golds;
  double acc = 0.0;
  double f1 = 0.0;
};

// Eval-mode predictions over a labelled set. Unlabelled samples are a DataError.
EvalResult evaluate(const DigNet& model, const std::vector<ParseSample>& samples);

struct MetricsRow {
  std::string variant;
  double acc = 0.0;
  double f1 = 0.0;
  std::size_t param_count = 0;
  std::uint64_t seed = 0;
  bool operator==(const MetricsRow&) const = default;
};

// Trains `config` on `train_set` and scores it on `test_set`.
MetricsRow run_variant(const std::string& label, const RunConfig& config, const std::vector<ParseSample>& train_set,
                       const std::vector<ParseSample>& test_set);

// Row label: "full" for the unablated model, otherwise the ablation name.
std::string variant_label(Ablation ablation);

// `variant` is an ablation name or "full"; anything else is a ConfigError.
MetricsRow run_ablation(const RunConfig& base, const std::string& variant, const std::vector<ParseSample>& train_set,
                        const std::vector<ParseSample>& test_set);

// Full model plus the six ablations, in that order.
std::vector<MetricsRow> ablation_suite(const RunConfig& base, const std::vector<ParseSample>& train_set,
                                       const std::vector<ParseSample>& test_set);

enum class SweepAxis { kLgiLayers, kGcnLayers };

// One full-model row per value, labelled "L_lgi=3" or "L_gcn=3".
std::vector<MetricsRow> layer_sweep(const RunConfig& base, SweepAxis axis, const std::vector<std::size_t>& values,
                                    const std::vector<ParseSample>& train_set,
                                    const std::vector<ParseSample>& test_set);

// Columns: variant, acc, f1, params, seed.
void write_csv(std::ostream& out, const std::vector<MetricsRow>& rows);
std::string format_table(const std::vector<MetricsRow>& rows);

}  // namespace lginet
