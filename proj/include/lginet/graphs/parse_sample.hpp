#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace lginet {

inline constexpr int kRootHead = -1;
inline constexpr int kNoLabel = -1;
inline constexpr int kNumClasses = 3;

// One (sentence, aspect, label) instance with its dependency parse.
// heads are 0-based token indices, kRootHead for the root token.
// The aspect occupies tokens [aspect_begin, aspect_end).
struct ParseSample {
  std::vector<std::string> tokens;
  std::vector<int> heads;
  std::vector<std::string> deprels;
  std::size_t aspect_begin = 0;
  std::size_t aspect_end = 0;
  // 0 negative, 1 neutral, 2 positive; kNoLabel for unlabeled skeletons.
  int label = kNoLabel;

  std::size_t size() const { return tokens.size(); }
  std::size_t aspect_size() const { return aspect_end - aspect_begin; }
  bool operator==(const ParseSample&) const = default;
};

// Throws DataError unless the parse is a single-rooted tree with aligned
// columns and a non-empty in-range aspect span. Labels are checked only when
// `require_label` is set.
void validate_sample(const ParseSample& sample, bool require_label = true);

// Throws DataError unless heads/deprels are aligned and form a tree.
void validate_tree(const ParseSample& sample);

}  // namespace lginet
