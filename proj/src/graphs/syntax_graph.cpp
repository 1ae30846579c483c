#include "lginet/graphs/syntax_graph.hpp"

#include <deque>
#include <string>

#include "lginet/errors.hpp"

namespace lginet {

bool BinaryMatrix::symmetric() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

std::size_t BinaryMatrix::edge_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if ((*this)(i, j) || (*this)(j, i)) ++count;
  return count;
}

std::size_t SyntaxGraph::degree(std::size_t i) const {
  std::size_t d = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (j != i && adj(i, j)) ++d;
  return d;
}

std::vector<std::size_t> SyntaxGraph::neighbors(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n; ++j)
    if (j != i && adj(i, j)) out.push_back(j);
  return out;
}

BinaryMatrix build_base_adjacency(const ParseSample& sample) {
  const std::size_t n = sample.tokens.size();
  BinaryMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int h = sample.heads.at(i);
    if (h == kRootHead) continue;
    const auto head = static_cast<std::size_t>(h);
    m.set(i, head, 1);
    m.set(head, i, 1);
  }
  return m;
}

std::size_t merged_index(std::size_t token, std::size_t begin, std::size_t end) {
  if (token < begin) return token;
  if (token < end) return begin;
  return token - (end - begin - 1);
}

std::size_t original_index(std::size_t node, std::size_t begin, std::size_t end) {
  if (node <= begin) return node;
  return node + (end - begin - 1);
}

SyntaxGraph merge_aspect(const BinaryMatrix& base, std::size_t begin, std::size_t end) {
  const std::size_t nc = base.size();
  if (begin >= end || end > nc) {
    throw ContractError("merge_aspect: span [" + std::to_string(begin) + ", " + std::to_string(end) +
                        ") invalid for " + std::to_string(nc) + " nodes");
  }
  if (end - begin == nc) throw ContractError("merge_aspect: aspect covers every token, no context remains");

  // Append v_a at index nc; its row/column are the binarized sums over aspect rows/columns.
  const std::size_t ext = nc + 1;
  BinaryMatrix grown(ext);
  for (std::size_t i = 0; i < nc; ++i)
    for (std::size_t j = 0; j < nc; ++j) grown.set(i, j, base(i, j));
  for (std::size_t i = 0; i < nc; ++i) {
    std::size_t col_sum = 0;  // s_{tau,i}
    std::size_t row_sum = 0;  // s_{i,tau}
    for (std::size_t k = begin; k < end; ++k) {
      col_sum += base(k, i);
      row_sum += base(i, k);
    }
    grown.set(nc, i, col_sum >= 1 ? 1 : 0);
    grown.set(i, nc, row_sum >= 1 ? 1 : 0);
  }
  grown.set(nc, nc, 0);

  // Drop the original aspect rows/columns; keep survivors in order, with v_a
  // slotted into position `begin`.
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < begin; ++i) keep.push_back(i);
  keep.push_back(nc);
  for (std::size_t i = end; i < nc; ++i) keep.push_back(i);

  SyntaxGraph out;
  out.n = keep.size();
  out.tau = begin;
  out.adj = BinaryMatrix(out.n);
  for (std::size_t i = 0; i < out.n; ++i)
    for (std::size_t j = 0; j < out.n; ++j) out.adj.set(i, j, grown(keep[i], keep[j]));
  out.adj.set(out.tau, out.tau, 0);
  return out;
}

SyntaxGraph build_syntax_graph(const ParseSample& sample) {
  return merge_aspect(build_base_adjacency(sample), sample.aspect_begin, sample.aspect_end);
}

std::vector<int> aspect_distances(const SyntaxGraph& graph) {
  std::vector<int> dist(graph.n, kUnreachable);
  std::deque<std::size_t> frontier{graph.tau};
  dist[graph.tau] = 0;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop_front();
    for (std::size_t v = 0; v < graph.n; ++v) {
      if (v != u && graph.adj(u, v) && dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        frontier.push_back(v);
      }
    }
  }
  return dist;
}

std::vector<int> aspect_distances(const ParseSample& sample) {
  return aspect_distances(build_syntax_graph(sample));
}

}  // namespace lginet
