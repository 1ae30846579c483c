#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lginet/graphs/parse_sample.hpp"
#include "lginet/graphs/syntax_graph.hpp"

namespace lginet {

inline constexpr int kNoRelation = -1;
inline constexpr int kDefaultMaxBucket = 4;

std::string distance_relation(int distance, int max_bucket);  // "n:con" / "disc:con"
std::string reversed_relation(const std::string& relation);   // "rv:" + relation

// Sorted relation inventory. Forward relations and their "rv:" reversals
// live in separate id spaces of equal size: forward id k <-> "rv:" + name(k).
// Relations never seen when the vocabulary was built resolve to the cap
// bucket "<max_bucket>:con", which is always present.
class RelationVocab {
 public:
  RelationVocab() : RelationVocab(std::vector<std::string>{}, kDefaultMaxBucket) {}
  RelationVocab(std::vector<std::string> labels, int max_bucket);

  int max_bucket() const { return max_bucket_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  bool contains(const std::string& relation) const { return ids_.count(relation) != 0; }
  int id(const std::string& relation) const;
  int reversed_id(const std::string& reversed) const;
  const std::string& name(int id) const;
  std::string reversed_name(int id) const { return reversed_relation(name(id)); }
  int cap_id() const { return id(distance_relation(max_bucket_, max_bucket_)); }

  bool operator==(const RelationVocab& other) const {
    return max_bucket_ == other.max_bucket_ && names_ == other.names_;
  }

 private:
  int max_bucket_;
  std::vector<std::string> names_;
  std::map<std::string, int> ids_;
};

// Star graph from every non-aspect node to the aspect node, plus reversals.
struct RelationGraph {
  std::size_t n = 0;
  std::size_t tau = 0;
  std::vector<int> rel;     // kNoRelation at tau
  std::vector<int> rel_rv;  // kNoRelation at tau
  std::shared_ptr<const RelationVocab> vocab;

  bool operator==(const RelationGraph& other) const;
};

// Relation string per merged node (empty at tau): the dependency label for
// nodes adjacent to the aspect, "n:con" (capped) further away, "disc:con"
// for unreachable nodes. For a node adjacent to several aspect tokens the
// edge to the lowest-index aspect token wins.
std::vector<std::string> relation_labels(const ParseSample& sample, const SyntaxGraph& graph,
                                         const std::vector<int>& distances,
                                         int max_bucket = kDefaultMaxBucket);

// Builds a vocabulary from the relations of every sample.
std::shared_ptr<const RelationVocab> build_relation_vocab(const std::vector<ParseSample>& samples,
                                                          int max_bucket = kDefaultMaxBucket);

// With a null vocab, one is built from this sample alone.
RelationGraph build_relation_graph(const ParseSample& sample, const SyntaxGraph& graph,
                                   const std::vector<int>& distances,
                                   int max_bucket = kDefaultMaxBucket,
                                   std::shared_ptr<const RelationVocab> vocab = nullptr);

}  // namespace lginet
