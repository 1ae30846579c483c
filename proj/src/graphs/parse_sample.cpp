#include "lginet/graphs/parse_sample.hpp"

#include <string>

#include "lginet/errors.hpp"

namespace lginet {

void validate_tree(const ParseSample& sample) {
  const std::size_t n = sample.tokens.size();
  if (n == 0) throw DataError("sample has no tokens");
  if (sample.heads.size() != n || sample.deprels.size() != n) {
    throw DataError("tokens/heads/deprels lengths differ (" + std::to_string(n) + "/" +
                    std::to_string(sample.heads.size()) + "/" + std::to_string(sample.deprels.size()) + ")");
  }
  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int h = sample.heads[i];
    if (h == kRootHead) {
      ++roots;
    } else if (h < 0 || static_cast<std::size_t>(h) >= n) {
      throw DataError("token " + std::to_string(i) + " has head " + std::to_string(h) + " outside the sentence");
    } else if (static_cast<std::size_t>(h) == i) {
      throw DataError("token " + std::to_string(i) + " is its own head");
    }
  }
  if (roots != 1) throw DataError("expected exactly one root, found " + std::to_string(roots));
  for (std::size_t i = 0; i < n; ++i) {
    int cursor = static_cast<int>(i);
    for (std::size_t steps = 0; cursor != kRootHead; ++steps) {
      if (steps > n) throw DataError("head chain from token " + std::to_string(i) + " contains a cycle");
      cursor = sample.heads[static_cast<std::size_t>(cursor)];
    }
  }
}

void validate_sample(const ParseSample& sample, bool require_label) {
  validate_tree(sample);
  if (sample.aspect_begin >= sample.aspect_end || sample.aspect_end > sample.tokens.size()) {
    throw DataError("aspect span [" + std::to_string(sample.aspect_begin) + ", " +
                    std::to_string(sample.aspect_end) + ") invalid for " +
                    std::to_string(sample.tokens.size()) + " tokens");
  }
  if (require_label && (sample.label < 0 || sample.label >= kNumClasses)) {
    throw DataError("label " + std::to_string(sample.label) + " not in {0, 1, 2}");
  }
}

}  // namespace lginet
