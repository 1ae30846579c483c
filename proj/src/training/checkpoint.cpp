#include "lginet/training/checkpoint.hpp"

#include <fstream>

#include "lginet/errors.hpp"
#include "lginet/graphs/dataset.hpp"
#include "lginet/graphs/graph_io.hpp"

namespace lginet {

nlohmann::ordered_json model_config_to_json(const ModelConfig& c) {
  return {
      {"d_embed", c.d_embed},
      {"d_hidden", c.d_hidden},
      {"d_rel", c.d_rel},
      {"L_lgi", c.L_lgi},
      {"L_gcn", c.L_gcn},
      {"n_heads_rel", c.n_heads_rel},
      {"n_heads_mha", c.n_heads_mha},
      {"cgmp_variant", to_string(c.cgmp_variant)},
      {"dropout_enc", c.dropout_enc},
      {"dropout_other", c.dropout_other},
      {"ablation", to_string(c.ablation)},
      {"max_bucket", c.max_bucket},
  };
}

ModelConfig model_config_from_json(const nlohmann::json& doc) {
  ModelConfig c;
  try {
    c.d_embed = doc.at("d_embed").get<std::size_t>();
    c.d_hidden = doc.at("d_hidden").get<std::size_t>();
    c.d_rel = doc.at("d_rel").get<std::size_t>();
    c.L_lgi = doc.at("L_lgi").get<std::size_t>();
    c.L_gcn = doc.at("L_gcn").get<std::size_t>();
    c.n_heads_rel = doc.at("n_heads_rel").get<std::size_t>();
    c.n_heads_mha = doc.at("n_heads_mha").get<std::size_t>();
    c.cgmp_variant = parse_cgmp_variant(doc.at("cgmp_variant").get<std::string>());
    c.dropout_enc = doc.at("dropout_enc").get<double>();
    c.dropout_other = doc.at("dropout_other").get<double>();
    c.ablation = parse_ablation(doc.at("ablation").get<std::string>());
    c.max_bucket = doc.at("max_bucket").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("model config: ") + e.what());
  }
  return c;
}

nlohmann::ordered_json checkpoint_sidecar(const DigNet& model) {
  nlohmann::ordered_json doc;
  doc["model"] = model_config_to_json(model.config());
  // Index 0 is the reserved unknown token and is implied.
  const auto& words = model.words().words();
  doc["words"] = std::vector<std::string>(words.begin() + 1, words.end());
  doc["relations"] = vocab_to_json(*model.relations());
  return doc;
}

std::filesystem::path sidecar_path(const std::filesystem::path& archive) {
  std::filesystem::path p = archive;
  p += ".json";
  return p;
}

void save_checkpoint(const std::filesystem::path& archive, const DigNet& model, ArchiveDtype dtype) {
  save_archive(archive, model.params(), dtype);
  const auto side = sidecar_path(archive);
  std::ofstream out(side);
  if (!out) throw FormatError("cannot write " + side.string());
  out << checkpoint_sidecar(model).dump(2) << '\n';
}

DigNet load_checkpoint(const std::filesystem::path& archive) {
  const auto side = sidecar_path(archive);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(side));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(side.string() + ": " + e.what());
  }
  ModelConfig config;
  std::vector<std::string> words;
  std::shared_ptr<const RelationVocab> relations;
  try {
    config = model_config_from_json(doc.at("model"));
    words = doc.at("words").get<std::vector<std::string>>();
    relations = std::make_shared<const RelationVocab>(vocab_from_json(doc.at("relations")));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(side.string() + ": " + e.what());
  }
  DigNet model(config, WordVocab(words), relations, 0);
  const ParamStore stored = load_archive(archive);
  try {
    copy_values(stored, model.params());
  } catch (const ContractError& e) {
    throw FormatError(archive.string() + " does not match its sidecar: " + e.what());
  }
  return model;
}

}  // namespace lginet
