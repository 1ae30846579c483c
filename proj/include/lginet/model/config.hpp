#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lginet/graphs/lgig.hpp"
#include "lginet/graphs/relation_graph.hpp"

namespace lginet {

enum class CgmpVariant { kGate, kMlp, kMha };

enum class Ablation {
  kNone,
  kNoSyntax,
  kNoRelation,
  kNoLgi,
  kNoFa2c,
  kSyntaxDecoder,
  kRelationDecoder,
};

std::string to_string(CgmpVariant variant);
std::string to_string(Ablation ablation);
// Throws ConfigError on unknown names. Ablation names accept '-' or '_'.
CgmpVariant parse_cgmp_variant(const std::string& text);
Ablation parse_ablation(const std::string& text);

const std::vector<CgmpVariant>& all_cgmp_variants();
// kNone first, then the six ablations.
const std::vector<Ablation>& all_ablations();

struct ModelConfig {
  std::size_t d_embed = 64;
  std::size_t d_hidden = 64;
  std::size_t d_rel = 32;
  std::size_t L_lgi = 2;
  std::size_t L_gcn = 2;
  std::size_t n_heads_rel = 4;
  std::size_t n_heads_mha = 4;
  CgmpVariant cgmp_variant = CgmpVariant::kGate;
  double dropout_enc = 0.0;
  double dropout_other = 0.0;
  Ablation ablation = Ablation::kNone;
  int max_bucket = kDefaultMaxBucket;

  // Throws ConfigError naming the offending field.
  void validate() const;

  // Gate and MLP need aligned counterparts; MHA attends over the whole other graph.
  InteractiveMode interactive_mode() const {
    return cgmp_variant == CgmpVariant::kMha ? InteractiveMode::kOneToAll : InteractiveMode::kOneToOne;
  }

  bool uses_syntax() const { return ablation != Ablation::kNoSyntax; }
  bool uses_relation() const { return ablation != Ablation::kNoRelation; }
  bool uses_cgmp() const { return uses_syntax() && uses_relation() && ablation != Ablation::kNoLgi; }
  bool fuses_streams() const {
    return uses_syntax() && uses_relation() && ablation != Ablation::kSyntaxDecoder &&
           ablation != Ablation::kRelationDecoder;
  }

  bool operator==(const ModelConfig&) const = default;
};

}  // namespace lginet
