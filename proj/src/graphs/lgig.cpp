#include "lginet/graphs/lgig.hpp"

#include "lginet/errors.hpp"

namespace lginet {

std::string to_string(InteractiveMode mode) {
  return mode == InteractiveMode::kOneToOne ? "one-to-one" : "one-to-all";
}

InteractiveMode parse_interactive_mode(const std::string& text) {
  if (text == "one-to-one" || text == "o2o") return InteractiveMode::kOneToOne;
  if (text == "one-to-all" || text == "o2a") return InteractiveMode::kOneToAll;
  throw ConfigError("unknown interactive mode '" + text + "'");
}

std::vector<LgigEdge> LGIG::edges() const {
  std::vector<LgigEdge> out;
  const std::size_t count = n();
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j)
      if (i != j && syntax.adj(i, j))
        out.push_back({GraphSide::kSyntax, i, GraphSide::kSyntax, j, EdgeKind::kSyntax, kNoRelation});

  for (std::size_t i = 0; i < count; ++i) {
    if (i == relation.tau) continue;
    out.push_back({GraphSide::kRelation, i, GraphSide::kRelation, relation.tau, EdgeKind::kRelation,
                   relation.rel[i]});
    out.push_back({GraphSide::kRelation, relation.tau, GraphSide::kRelation, i,
                   EdgeKind::kReversedRelation, relation.rel_rv[i]});
  }

  for (GraphSide from : {GraphSide::kSyntax, GraphSide::kRelation}) {
    const GraphSide to = from == GraphSide::kSyntax ? GraphSide::kRelation : GraphSide::kSyntax;
    for (std::size_t i = 0; i < count; ++i) {
      if (mode == InteractiveMode::kOneToOne) {
        out.push_back({from, i, to, i, EdgeKind::kInteractive, kNoRelation});
      } else {
        for (std::size_t j = 0; j < count; ++j)
          out.push_back({from, i, to, j, EdgeKind::kInteractive, kNoRelation});
      }
    }
  }
  return out;
}

std::size_t LGIG::interactive_edge_count() const {
  const std::size_t count = n();
  return 2 * (mode == InteractiveMode::kOneToOne ? count : count * count);
}

LGIG assemble_lgig(SyntaxGraph syntax, RelationGraph relation, InteractiveMode mode) {
  if (syntax.n != relation.n || syntax.tau != relation.tau) {
    throw ContractError("assemble_lgig: syntax graph (n=" + std::to_string(syntax.n) +
                        ", tau=" + std::to_string(syntax.tau) + ") and relation graph (n=" +
                        std::to_string(relation.n) + ", tau=" + std::to_string(relation.tau) +
                        ") are not aligned");
  }
  if (relation.rel.size() != relation.n || relation.rel_rv.size() != relation.n) {
    throw ContractError("assemble_lgig: relation arrays do not match node count");
  }
  return LGIG{std::move(syntax), std::move(relation), mode};
}

LGIG build_lgig(const ParseSample& sample, InteractiveMode mode,
                std::shared_ptr<const RelationVocab> vocab, int max_bucket) {
  validate_sample(sample, false);
  SyntaxGraph syntax = build_syntax_graph(sample);
  const auto distances = aspect_distances(syntax);
  RelationGraph relation = build_relation_graph(sample, syntax, distances, max_bucket, std::move(vocab));
  return assemble_lgig(std::move(syntax), std::move(relation), mode);
}

}  // namespace lginet
