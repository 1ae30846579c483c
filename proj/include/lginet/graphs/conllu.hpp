#pragma once

#include <string_view>
#include <vector>

#include "lginet/graphs/parse_sample.hpp"

namespace lginet {

// Reads CoNLL-U text into parse skeletons (tokens/heads/deprels only; aspect
// span and label left unset). Multiword-token ranges ("3-4") and empty nodes
// ("3.1") are skipped. Throws FormatError with the offending line number.
std::vector<ParseSample> parse_conllu(std::string_view text);

}  // namespace lginet
