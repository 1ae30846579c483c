#pragma once

#include <filesystem>

#include <json.hpp>

#include "lginet/model/dignet.hpp"
#include "lginet/numcore/archive.hpp"

// A checkpoint is a parameter archive plus a JSON sidecar at "<archive>.json"
// holding the model config and both vocabularies.
namespace lginet {

nlohmann::ordered_json model_config_to_json(const ModelConfig& config);
ModelConfig model_config_from_json(const nlohmann::json& doc);

nlohmann::ordered_json checkpoint_sidecar(const DigNet& model);

std::filesystem::path sidecar_path(const std::filesystem::path& archive);

void save_checkpoint(const std::filesystem::path& archive, const DigNet& model,
                     ArchiveDtype dtype = ArchiveDtype::kF64);

// Rebuilds the model from the sidecar and copies the archived values in.
// Missing or mismatched parameters throw FormatError.
DigNet load_checkpoint(const std::filesystem::path& archive);

}  // namespace lginet
