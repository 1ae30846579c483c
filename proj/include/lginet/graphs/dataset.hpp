#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lginet/graphs/parse_sample.hpp"

namespace lginet {

// JSONL dataset: one object per (sentence, aspect) line:
//   {"tokens": [...], "heads": [...], "deprels": [...], "aspect": [start, end], "label": int}
// heads use -1 for the root. A sentence with several aspects appears once per aspect.
std::vector<ParseSample> parse_jsonl(std::string_view text);
std::string to_jsonl(const std::vector<ParseSample>& samples);

std::vector<ParseSample> load_jsonl(const std::filesystem::path& path);
void save_jsonl(const std::filesystem::path& path, const std::vector<ParseSample>& samples);

// Dispatches on extension: ".conllu"/".conll" -> CoNLL-U skeletons, otherwise JSONL.
std::vector<ParseSample> load_samples(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace lginet
