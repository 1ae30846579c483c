#include "lginet/graphs/graph_io.hpp"

#include <sstream>

#include "lginet/errors.hpp"

namespace lginet {

using nlohmann::json;

json vocab_to_json(const RelationVocab& vocab) {
  return {{"max_bucket", vocab.max_bucket()}, {"relations", vocab.names()}};
}

RelationVocab vocab_from_json(const json& doc) {
  try {
    return RelationVocab(doc.at("relations").get<std::vector<std::string>>(), doc.at("max_bucket").get<int>());
  } catch (const json::exception& e) {
    throw FormatError(std::string("relation vocabulary: ") + e.what());
  }
}

json lgig_to_json(const LGIG& graph) {
  json adjacency = json::array();
  for (std::size_t i = 0; i < graph.n(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < graph.n(); ++j) row.push_back(static_cast<int>(graph.syntax.adj(i, j)));
    adjacency.push_back(std::move(row));
  }
  json doc = {{"n", graph.n()},
              {"tau", graph.tau()},
              {"mode", to_string(graph.mode)},
              {"adjacency", std::move(adjacency)},
              {"rel", graph.relation.rel},
              {"rel_rv", graph.relation.rel_rv}};
  if (graph.relation.vocab) doc["vocab"] = vocab_to_json(*graph.relation.vocab);
  return doc;
}

LGIG lgig_from_json(const json& doc) {
  try {
    const auto n = doc.at("n").get<std::size_t>();
    const auto tau = doc.at("tau").get<std::size_t>();
    const auto rows = doc.at("adjacency").get<std::vector<std::vector<int>>>();
    if (rows.size() != n || tau >= n) throw FormatError("LGIG: adjacency/tau inconsistent with n");
    SyntaxGraph syntax;
    syntax.n = n;
    syntax.tau = tau;
    syntax.adj = BinaryMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw FormatError("LGIG: adjacency row " + std::to_string(i) + " has wrong length");
      for (std::size_t j = 0; j < n; ++j) {
        if (rows[i][j] != 0 && rows[i][j] != 1) throw FormatError("LGIG: adjacency entries must be 0 or 1");
        syntax.adj.set(i, j, static_cast<std::uint8_t>(rows[i][j]));
      }
    }
    RelationGraph relation;
    relation.n = n;
    relation.tau = tau;
    relation.rel = doc.at("rel").get<std::vector<int>>();
    relation.rel_rv = doc.at("rel_rv").get<std::vector<int>>();
    if (doc.contains("vocab")) relation.vocab = std::make_shared<const RelationVocab>(vocab_from_json(doc["vocab"]));
    return assemble_lgig(std::move(syntax), std::move(relation),
                         parse_interactive_mode(doc.at("mode").get<std::string>()));
  } catch (const json::exception& e) {
    throw FormatError(std::string("LGIG: ") + e.what());
  } catch (const ContractError& e) {
    throw FormatError(e.what());
  }
}

std::string lgig_to_dot(const LGIG& graph, const std::vector<std::string>& node_names) {
  auto label = [&](std::size_t i) {
    std::string name = i < node_names.size() ? node_names[i] : std::to_string(i);
    std::string escaped;
    for (char c : name) {
      if (c == '"' || c == '\\') escaped.push_back('\\');
      escaped.push_back(c);
    }
    return escaped;
  };
  auto relation_name = [&](int id, bool reversed) -> std::string {
    if (!graph.relation.vocab || id == kNoRelation) return std::to_string(id);
    return reversed ? graph.relation.vocab->reversed_name(id) : graph.relation.vocab->name(id);
  };

  std::ostringstream out;
  out << "digraph lgig {\n  subgraph cluster_syntax {\n    label=\"syntax\";\n";
  for (std::size_t i = 0; i < graph.n(); ++i)
    out << "    x" << i << " [label=\"" << label(i) << "\"" << (i == graph.tau() ? ", shape=box" : "") << "];\n";
  out << "  }\n  subgraph cluster_relation {\n    label=\"relation\";\n";
  for (std::size_t i = 0; i < graph.n(); ++i)
    out << "    y" << i << " [label=\"" << label(i) << "\"" << (i == graph.tau() ? ", shape=box" : "") << "];\n";
  out << "  }\n";
  for (const LgigEdge& e : graph.edges()) {
    const char from = e.from_side == GraphSide::kSyntax ? 'x' : 'y';
    const char to = e.to_side == GraphSide::kSyntax ? 'x' : 'y';
    switch (e.kind) {
      case EdgeKind::kSyntax:
        if (e.from < e.to) out << "  x" << e.from << " -> x" << e.to << " [dir=none];\n";
        break;
      case EdgeKind::kRelation:
        out << "  y" << e.from << " -> y" << e.to << " [label=\"" << relation_name(e.relation, false) << "\"];\n";
        break;
      case EdgeKind::kReversedRelation:
        out << "  y" << e.from << " -> y" << e.to << " [label=\"" << relation_name(e.relation, true)
            << "\", color=gray];\n";
        break;
      case EdgeKind::kInteractive:
        out << "  " << from << e.from << " -> " << to << e.to << " [style=dashed, color=blue];\n";
        break;
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace lginet
