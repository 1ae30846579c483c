#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <string>
#include <vector>

#include "lginet/graphs/parse_sample.hpp"
#include "lginet/numcore/rng.hpp"

namespace lginet::testing {

// Hand-encoded parse of "A cheap eat for NYC, but not for dosa." with aspect "dosa".
//   eat is the root; A, cheap, for(3), ",", but, for(8), "." attach to eat;
//   NYC -> for(3); not -> for(8); dosa -> for(8).
inline ParseSample dosa_sentence() {
  ParseSample s;
  s.tokens = {"A", "cheap", "eat", "for", "NYC", ",", "but", "not", "for", "dosa", "."};
  s.heads = {2, 2, kRootHead, 2, 3, 2, 2, 8, 2, 8, 2};
  s.deprels = {"det", "amod", "ROOT", "prep", "pobj", "punct", "cc", "neg", "prep", "pobj", "punct"};
  s.aspect_begin = 9;
  s.aspect_end = 10;
  s.label = 0;
  return s;
}

// Random labeled dependency tree with a random aspect span that leaves at
// least one context token.
inline ParseSample random_tree_sample(Rng& rng, std::size_t max_tokens) {
  const std::size_t n = 2 + rng.index(max_tokens - 1);
  // Random recursive tree over a random permutation of positions.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  ParseSample s;
  s.heads.assign(n, kRootHead);
  for (std::size_t k = 1; k < n; ++k) s.heads[order[k]] = static_cast<int>(order[rng.index(k)]);
  static const std::vector<std::string> labels = {"nsubj", "amod", "det", "prep", "pobj", "cc", "conj", "advmod"};
  for (std::size_t i = 0; i < n; ++i) {
    s.tokens.push_back("w" + std::to_string(i));
    s.deprels.push_back(s.heads[i] == kRootHead ? "ROOT" : labels[rng.index(labels.size())]);
  }
  const std::size_t span = 1 + rng.index(std::min<std::size_t>(3, n - 1));
  s.aspect_begin = rng.index(n - span + 1);
  s.aspect_end = s.aspect_begin + span;
  s.label = static_cast<int>(rng.index(3));
  return s;
}

// All-pairs shortest paths over an adjacency predicate; -1 for unreachable.
template <typename Adjacent>
std::vector<std::vector<int>> floyd_warshall(std::size_t n, Adjacent adjacent) {
  constexpr int kInf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && adjacent(i, j)) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  for (auto& row : d)
    for (int& v : row)
      if (v >= kInf) v = -1;
  return d;
}

// Set-based reference for aspect merging, independent of the matrix route:
// neighbors of the merged node are the union of the aspect tokens' context
// neighbors; context-context edges are kept. Nodes are renumbered by walking
// the sentence and emitting the aspect once, at its first token.
struct MergedReference {
  std::size_t n = 0;
  std::size_t tau = 0;
  std::set<std::pair<std::size_t, std::size_t>> edges;  // (min, max)
  std::set<std::size_t> aspect_neighbors;                // merged indices
};

inline MergedReference brute_force_merge(const ParseSample& s) {
  const std::size_t nc = s.tokens.size();
  auto in_aspect = [&](std::size_t t) { return t >= s.aspect_begin && t < s.aspect_end; };
  std::vector<std::size_t> node_of(nc);
  MergedReference ref;
  for (std::size_t t = 0; t < nc; ++t) {
    if (in_aspect(t)) {
      if (t == s.aspect_begin) ref.tau = ref.n++;
      node_of[t] = ref.tau;
    } else {
      node_of[t] = ref.n++;
    }
  }
  for (std::size_t t = 0; t < nc; ++t) {
    if (s.heads[t] == kRootHead) continue;
    const auto h = static_cast<std::size_t>(s.heads[t]);
    const std::size_t a = node_of[t], b = node_of[h];
    if (a == b) continue;  // edge inside the aspect
    ref.edges.insert({std::min(a, b), std::max(a, b)});
    if (a == ref.tau) ref.aspect_neighbors.insert(b);
    if (b == ref.tau) ref.aspect_neighbors.insert(a);
  }
  return ref;
}

}  // namespace lginet::testing
