#pragma once

#include <string>

#include <json.hpp>

#include "lginet/graphs/lgig.hpp"

namespace lginet {

// {"n", "tau", "mode", "adjacency": [[0/1...]...], "rel": [...], "rel_rv": [...],
//  "vocab": {"max_bucket", "relations": [...]}}; tau entries of rel/rel_rv are -1.
nlohmann::json lgig_to_json(const LGIG& graph);
// Throws FormatError on missing fields or inconsistent sizes.
LGIG lgig_from_json(const nlohmann::json& doc);

nlohmann::json vocab_to_json(const RelationVocab& vocab);
RelationVocab vocab_from_json(const nlohmann::json& doc);

// Graphviz rendering: syntax nodes x*, relation nodes y*, interactive edges dashed.
std::string lgig_to_dot(const LGIG& graph, const std::vector<std::string>& node_names = {});

}  // namespace lginet
