#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include <json.hpp>

#include "lginet/graphs/parse_sample.hpp"
#include "lginet/model/dignet.hpp"
#include "lginet/training/train_config.hpp"

namespace lginet {

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double loss = 0.0;      // mean training loss over the epoch
  double acc = 0.0;       // eval-mode accuracy on the training split after the epoch
  bool operator==(const EpochRecord&) const = default;
};

using History = std::vector<EpochRecord>;

nlohmann::ordered_json history_to_json(const History& history);
History history_from_json(const nlohmann::json& doc);
void save_history(const std::filesystem::path& path, const History& history);

// Return false to stop after the current epoch.
using EpochCallback = std::function<bool(const EpochRecord&, const DigNet&)>;

// -log P[label], with the probability floor applied.
Tensor sample_loss(const DigNet& model, const ModelInput& input, const ForwardOptions& options = {});

// Vocabularies come from `train_set`; parameters are initialized from `seed`.
DigNet init_model(const ModelConfig& config, const std::vector<ParseSample>& train_set, std::uint64_t seed);

// Mini-batch AdamW on the mean batch loss. Each sample is differentiated on
// its own tape and gradients accumulate on the parameters. Deterministic in
// config.seed: shuffling and dropout draw from separate streams.
History fit(DigNet& model, const std::vector<ModelInput>& data, const TrainConfig& config,
            const EpochCallback& on_epoch = {});

struct TrainResult {
  DigNet model;
  History history;
};

// init_model + fit. The model seed is derived from config.train.seed.
TrainResult train(const RunConfig& config, const std::vector<ParseSample>& train_set,
                  const EpochCallback& on_epoch = {});

}  // namespace lginet
