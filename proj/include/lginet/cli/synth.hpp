#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lginet/graphs/parse_sample.hpp"

namespace lginet {

struct SynthOptions {
  std::size_t n_samples = 32;
  std::uint64_t seed = 0;
  // Tree distance between the aspect and the word that decides the label.
  std::size_t polarity_distance = 3;
  // A polarity word of a different class placed farther from the aspect.
  bool distractor = true;
  std::size_t distractor_gap = 2;
  // Probability that a polarity word (target or distractor) gets a negator
  // child. A negated target flips negative and positive; neutral stays.
  double negation_rate = 0.0;
  std::size_t max_aspect_tokens = 2;
  // Extra filler tokens per sentence, drawn uniformly from [0, max_fillers].
  std::size_t max_fillers = 3;
};

// Class lexicons indexed by label (negative, neutral, positive).
const std::vector<std::vector<std::string>>& polarity_lexicon();

// Random dependency trees with a contiguous aspect span. The label is the
// class of the polarity word at `polarity_distance` hops from the aspect.
std::vector<ParseSample> synthesize(const SynthOptions& options);

}  // namespace lginet
