#include "lginet/model/config.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "lginet/errors.hpp"

namespace lginet {

namespace {

constexpr std::array<std::pair<CgmpVariant, const char*>, 3> kVariantNames{{
    {CgmpVariant::kGate, "gate"},
    {CgmpVariant::kMlp, "mlp"},
    {CgmpVariant::kMha, "mha"},
}};

constexpr std::array<std::pair<Ablation, const char*>, 7> kAblationNames{{
    {Ablation::kNone, "none"},
    {Ablation::kNoSyntax, "no_syntax"},
    {Ablation::kNoRelation, "no_relation"},
    {Ablation::kNoLgi, "no_lgi"},
    {Ablation::kNoFa2c, "no_fa2c"},
    {Ablation::kSyntaxDecoder, "syntax_decoder"},
    {Ablation::kRelationDecoder, "relation_decoder"},
}};

}  // namespace

std::string to_string(CgmpVariant variant) {
  for (const auto& [v, name] : kVariantNames)
    if (v == variant) return name;
  return "?";
}

std::string to_string(Ablation ablation) {
  for (const auto& [a, name] : kAblationNames)
    if (a == ablation) return name;
  return "?";
}

CgmpVariant parse_cgmp_variant(const std::string& text) {
  for (const auto& [v, name] : kVariantNames)
    if (text == name) return v;
  throw ConfigError("unknown CGMP variant '" + text + "' (expected gate, mlp or mha)");
}

Ablation parse_ablation(const std::string& text) {
  std::string key = text;
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "full") return Ablation::kNone;
  for (const auto& [a, name] : kAblationNames)
    if (key == name) return a;
  throw ConfigError("unknown ablation '" + text + "'");
}

const std::vector<CgmpVariant>& all_cgmp_variants() {
  static const std::vector<CgmpVariant> variants{CgmpVariant::kGate, CgmpVariant::kMlp, CgmpVariant::kMha};
  return variants;
}

const std::vector<Ablation>& all_ablations() {
  static const std::vector<Ablation> ablations = [] {
    std::vector<Ablation> out;
    for (const auto& entry : kAblationNames) out.push_back(entry.first);
    return out;
  }();
  return ablations;
}

void ModelConfig::validate() const {
  auto require = [](bool ok, const std::string& message) {
    if (!ok) throw ConfigError("model config: " + message);
  };
  require(d_embed >= 1, "d_embed must be positive");
  require(d_hidden >= 1, "d_hidden must be positive");
  require(d_rel >= 1, "d_rel must be positive");
  require(L_lgi >= 1, "L_lgi must be at least 1");
  require(L_gcn >= 1, "L_gcn must be at least 1");
  require(n_heads_rel >= 1, "n_heads_rel must be at least 1");
  require(n_heads_mha >= 1, "n_heads_mha must be at least 1");
  require(d_hidden % n_heads_mha == 0, "d_hidden (" + std::to_string(d_hidden) +
                                           ") must be divisible by n_heads_mha (" + std::to_string(n_heads_mha) + ")");
  require(dropout_enc >= 0.0 && dropout_enc < 1.0, "dropout_enc must lie in [0, 1)");
  require(dropout_other >= 0.0 && dropout_other < 1.0, "dropout_other must lie in [0, 1)");
  require(max_bucket >= 2, "max_bucket must be at least 2");
}

}  // namespace lginet
