#include "lginet/graphs/relation_graph.hpp"

#include <algorithm>
#include <set>

#include "lginet/errors.hpp"

namespace lginet {

namespace {

constexpr const char* kReversedPrefix = "rv:";

void check_bucket(int max_bucket) {
  if (max_bucket < 2) throw ContractError("max_bucket must be at least 2, got " + std::to_string(max_bucket));
}

}  // namespace

std::string distance_relation(int distance, int max_bucket) {
  if (distance < 0) return "disc:con";
  return std::to_string(std::min(distance, max_bucket)) + ":con";
}

std::string reversed_relation(const std::string& relation) { return kReversedPrefix + relation; }

RelationVocab::RelationVocab(std::vector<std::string> labels, int max_bucket) : max_bucket_(max_bucket) {
  check_bucket(max_bucket);
  std::set<std::string> unique;
  for (auto& label : labels)
    if (!label.empty()) unique.insert(std::move(label));
  unique.insert(distance_relation(max_bucket, max_bucket));
  names_.assign(unique.begin(), unique.end());
  for (std::size_t i = 0; i < names_.size(); ++i) ids_.emplace(names_[i], static_cast<int>(i));
}

int RelationVocab::id(const std::string& relation) const {
  auto it = ids_.find(relation);
  if (it != ids_.end()) return it->second;
  return ids_.at(distance_relation(max_bucket_, max_bucket_));
}

int RelationVocab::reversed_id(const std::string& reversed) const {
  const std::string prefix = kReversedPrefix;
  if (reversed.rfind(prefix, 0) != 0) {
    throw ContractError("'" + reversed + "' is not a reversed relation");
  }
  return id(reversed.substr(prefix.size()));
}

const std::string& RelationVocab::name(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= names_.size()) {
    throw ContractError("relation id " + std::to_string(id) + " outside vocabulary of " +
                        std::to_string(names_.size()));
  }
  return names_[static_cast<std::size_t>(id)];
}

bool RelationGraph::operator==(const RelationGraph& other) const {
  if (n != other.n || tau != other.tau || rel != other.rel || rel_rv != other.rel_rv) return false;
  if (!vocab || !other.vocab) return vocab == other.vocab;
  return *vocab == *other.vocab;
}

std::vector<std::string> relation_labels(const ParseSample& sample, const SyntaxGraph& graph,
                                         const std::vector<int>& distances, int max_bucket) {
  check_bucket(max_bucket);
  if (distances.size() != graph.n) throw ContractError("relation_labels: distances do not match graph size");
  const std::size_t begin = sample.aspect_begin;
  const std::size_t end = sample.aspect_end;
  std::vector<std::string> labels(graph.n);
  for (std::size_t node = 0; node < graph.n; ++node) {
    if (node == graph.tau) continue;
    const int d = distances[node];
    if (d != 1) {
      labels[node] = distance_relation(d, max_bucket);
      continue;
    }
    // First-order neighbor: label of the tree edge to the lowest-index adjacent aspect token.
    const std::size_t token = original_index(node, begin, end);
    for (std::size_t a = begin; a < end; ++a) {
      if (sample.heads[token] == static_cast<int>(a)) {
        labels[node] = sample.deprels[token];
        break;
      }
      if (sample.heads[a] == static_cast<int>(token)) {
        labels[node] = sample.deprels[a];
        break;
      }
    }
    if (labels[node].empty()) throw ContractError("relation_labels: distance-1 node not adjacent to the aspect");
  }
  return labels;
}

std::shared_ptr<const RelationVocab> build_relation_vocab(const std::vector<ParseSample>& samples,
                                                          int max_bucket) {
  std::vector<std::string> all;
  for (const ParseSample& s : samples) {
    const SyntaxGraph g = build_syntax_graph(s);
    auto labels = relation_labels(s, g, aspect_distances(g), max_bucket);
    all.insert(all.end(), labels.begin(), labels.end());
  }
  return std::make_shared<const RelationVocab>(std::move(all), max_bucket);
}

RelationGraph build_relation_graph(const ParseSample& sample, const SyntaxGraph& graph,
                                   const std::vector<int>& distances, int max_bucket,
                                   std::shared_ptr<const RelationVocab> vocab) {
  const auto labels = relation_labels(sample, graph, distances, max_bucket);
  if (!vocab) vocab = std::make_shared<const RelationVocab>(labels, max_bucket);
  RelationGraph out;
  out.n = graph.n;
  out.tau = graph.tau;
  out.rel.assign(graph.n, kNoRelation);
  out.rel_rv.assign(graph.n, kNoRelation);
  for (std::size_t i = 0; i < graph.n; ++i) {
    if (i == graph.tau) continue;
    out.rel[i] = vocab->id(labels[i]);
    out.rel_rv[i] = vocab->reversed_id(reversed_relation(vocab->name(out.rel[i])));
  }
  out.vocab = std::move(vocab);
  return out;
}

}  // namespace lginet
