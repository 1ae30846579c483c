#include "lginet/cli/synth.hpp"

#include <deque>
#include <numeric>
#include <utility>

#include "lginet/errors.hpp"
#include "lginet/numcore/rng.hpp"

namespace lginet {

namespace {

const std::vector<std::string> kAspects{"dosa", "pizza", "service", "staff", "screen",
                                        "battery", "keyboard", "menu", "wine", "price"};
const std::vector<std::string> kFillers{"the", "a", "was", "is", "and", "but", "it", "very", "place",
                                        "food", "we", "here", "for", "of", "with", "this", "really", "quite"};
const std::string kNegator = "not";
const std::vector<std::string> kDeprels{"amod", "nsubj", "obj", "advmod", "conj", "nmod", "det", "cop", "dep"};

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[rng.index(items.size())];
}

ParseSample one_sample(Rng& rng, const SynthOptions& o) {
  // Units are tree nodes; unit 0 is the (possibly multi-token) aspect.
  std::vector<std::string> words{""};
  std::vector<std::vector<std::size_t>> adj(1);
  auto add_unit = [&](std::string word, std::size_t attach_to) {
    words.push_back(std::move(word));
    adj.emplace_back();
    const std::size_t u = words.size() - 1;
    adj[u].push_back(attach_to);
    adj[attach_to].push_back(u);
    return u;
  };
  // Chain of fillers from the aspect ending in `last`; returns whether `last` was negated.
  auto add_chain = [&](std::size_t length, const std::string& last) {
    std::size_t prev = 0;
    for (std::size_t k = 1; k <= length; ++k) prev = add_unit(k == length ? last : pick(rng, kFillers), prev);
    const bool negated = rng.bernoulli(o.negation_rate);
    if (negated) add_unit(kNegator, prev);
    return negated;
  };

  const auto& lexicon = polarity_lexicon();
  const std::size_t word_class = rng.index(lexicon.size());
  const bool negated = add_chain(o.polarity_distance, pick(rng, lexicon[word_class]));
  const std::size_t label = negated ? lexicon.size() - 1 - word_class : word_class;
  if (o.distractor) {
    const std::size_t other = (word_class + 1 + rng.index(lexicon.size() - 1)) % lexicon.size();
    add_chain(o.polarity_distance + o.distractor_gap, pick(rng, lexicon[other]));
  }
  const std::size_t fillers = rng.index(o.max_fillers + 1);
  for (std::size_t k = 0; k < fillers; ++k) add_unit(pick(rng, kFillers), rng.index(words.size()));

  // Orient edges away from a random root.
  const std::size_t n_units = words.size();
  const std::size_t root = rng.index(n_units);
  std::vector<std::size_t> parent(n_units, n_units);
  std::vector<bool> seen(n_units, false);
  std::deque<std::size_t> queue{root};
  seen[root] = true;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v : adj[u]) {
      if (seen[v]) continue;
      seen[v] = true;
      parent[v] = u;
      queue.push_back(v);
    }
  }

  std::vector<std::size_t> order(n_units);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  const std::size_t aspect_len = 1 + rng.index(o.max_aspect_tokens);

  ParseSample s;
  std::vector<std::size_t> head_token(n_units);
  for (std::size_t u : order) {
    if (u == 0) {
      s.aspect_begin = s.tokens.size();
      for (std::size_t k = 0; k < aspect_len; ++k) s.tokens.push_back(pick(rng, kAspects));
      s.aspect_end = s.tokens.size();
      head_token[u] = s.aspect_end - 1;
    } else {
      head_token[u] = s.tokens.size();
      s.tokens.push_back(words[u]);
    }
  }
  s.heads.assign(s.tokens.size(), kRootHead);
  s.deprels.assign(s.tokens.size(), "root");
  for (std::size_t t = s.aspect_begin; t + 1 < s.aspect_end; ++t) {
    s.heads[t] = static_cast<int>(s.aspect_end - 1);
    s.deprels[t] = "compound";
  }
  for (std::size_t u = 0; u < n_units; ++u) {
    if (u == root) continue;
    s.heads[head_token[u]] = static_cast<int>(head_token[parent[u]]);
    s.deprels[head_token[u]] = pick(rng, kDeprels);
  }
  s.label = static_cast<int>(label);
  return s;
}

}  // namespace

const std::vector<std::vector<std::string>>& polarity_lexicon() {
  static const std::vector<std::vector<std::string>> lexicon{
      {"bad", "awful", "bland", "rude", "overpriced", "terrible"},
      {"okay", "average", "standard", "ordinary", "plain", "usual"},
      {"good", "great", "tasty", "cheap", "friendly", "excellent"},
  };
  return lexicon;
}

std::vector<ParseSample> synthesize(const SynthOptions& o) {
  if (o.n_samples == 0) throw ConfigError("synth: n_samples must be positive");
  if (o.polarity_distance == 0) throw ConfigError("synth: polarity_distance must be at least 1");
  if (o.max_aspect_tokens == 0) throw ConfigError("synth: max_aspect_tokens must be at least 1");
  if (o.distractor && o.distractor_gap == 0) throw ConfigError("synth: distractor_gap must be at least 1");
  if (o.negation_rate < 0.0 || o.negation_rate > 1.0) throw ConfigError("synth: negation_rate must lie in [0, 1]");
  Rng rng(o.seed);
  std::vector<ParseSample> out;
  out.reserve(o.n_samples);
  for (std::size_t i = 0; i < o.n_samples; ++i) out.push_back(one_sample(rng, o));
  return out;
}

}  // namespace lginet
