#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "lginet/graphs/relation_graph.hpp"
#include "lginet/graphs/syntax_graph.hpp"

namespace lginet {

enum class InteractiveMode { kOneToOne, kOneToAll };

std::string to_string(InteractiveMode mode);
InteractiveMode parse_interactive_mode(const std::string& text);

enum class GraphSide { kSyntax, kRelation };

enum class EdgeKind {
  kSyntax,           // r_ij = 0
  kInteractive,      // r_ita
  kRelation,         // non-aspect -> aspect, labeled r^i
  kReversedRelation  // aspect -> non-aspect, labeled r_rv^j
};

struct LgigEdge {
  GraphSide from_side;
  std::size_t from;
  GraphSide to_side;
  std::size_t to;
  EdgeKind kind;
  // Relation id for kRelation, reversed id for kReversedRelation, else kNoRelation.
  int relation = kNoRelation;
};

// Syntax graph and relation graph over the same node set, stitched by
// interactive edges implied by `mode`.
struct LGIG {
  SyntaxGraph syntax;
  RelationGraph relation;
  InteractiveMode mode = InteractiveMode::kOneToOne;

  std::size_t n() const { return syntax.n; }
  std::size_t tau() const { return syntax.tau; }
  // All directed edges, each typed per the four labeling cases.
  std::vector<LgigEdge> edges() const;
  std::size_t interactive_edge_count() const;  // directed
  bool operator==(const LGIG&) const = default;
};

// Throws ContractError when n or tau disagree.
LGIG assemble_lgig(SyntaxGraph syntax, RelationGraph relation, InteractiveMode mode);

// Parse -> syntax graph -> distances -> relation graph -> LGIG.
LGIG build_lgig(const ParseSample& sample, InteractiveMode mode,
                std::shared_ptr<const RelationVocab> vocab = nullptr,
                int max_bucket = kDefaultMaxBucket);

}  // namespace lginet
