#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lginet/graphs/parse_sample.hpp"

namespace lginet {

// Dense square 0/1 matrix.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  explicit BinaryMatrix(std::size_t n) : n_(n), cells_(n * n, 0) {}

  std::size_t size() const { return n_; }
  std::uint8_t operator()(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, std::uint8_t v) { cells_[i * n_ + j] = v; }

  bool symmetric() const;
  std::size_t edge_count() const;  // undirected, off-diagonal pairs
  bool operator==(const BinaryMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> cells_;
};

// Undirected syntax graph with the aspect collapsed into node `tau`.
struct SyntaxGraph {
  std::size_t n = 0;
  BinaryMatrix adj;
  std::size_t tau = 0;

  std::size_t degree(std::size_t i) const;
  std::vector<std::size_t> neighbors(std::size_t i) const;
  bool operator==(const SyntaxGraph&) const = default;
};

inline constexpr int kUnreachable = -1;

// m[i][head(i)] = m[head(i)][i] = 1 for every non-root token.
BinaryMatrix build_base_adjacency(const ParseSample& sample);

// Collapses tokens [begin, end) into one node. The new node's row/column is
// the binarized sum of the aspect rows/columns; the original aspect
// rows/columns are then removed and the merged node sits at index `begin`.
// Throws ContractError if the span is empty, out of range, or covers every node.
SyntaxGraph merge_aspect(const BinaryMatrix& base, std::size_t begin, std::size_t end);

SyntaxGraph build_syntax_graph(const ParseSample& sample);

// Index of original token `token` after merging; aspect tokens map to tau.
std::size_t merged_index(std::size_t token, std::size_t begin, std::size_t end);
// Original token behind merged node `node` (the first aspect token for tau).
std::size_t original_index(std::size_t node, std::size_t begin, std::size_t end);

// BFS hop counts from tau; kUnreachable for disconnected nodes.
std::vector<int> aspect_distances(const SyntaxGraph& graph);
std::vector<int> aspect_distances(const ParseSample& sample);

}  // namespace lginet
