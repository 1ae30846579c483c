#include "lginet/graphs/dataset.hpp"

#include <fstream>
#include <iterator>

#include <json.hpp>

#include "lginet/errors.hpp"
#include "lginet/graphs/conllu.hpp"

namespace lginet {

using nlohmann::json;

std::vector<ParseSample> parse_jsonl(std::string_view text) {
  std::vector<ParseSample> samples;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    ParseSample sample;
    try {
      const json doc = json::parse(line);
      sample.tokens = doc.at("tokens").get<std::vector<std::string>>();
      sample.heads = doc.at("heads").get<std::vector<int>>();
      sample.deprels = doc.at("deprels").get<std::vector<std::string>>();
      const auto aspect = doc.at("aspect").get<std::vector<long long>>();
      if (aspect.size() != 2 || aspect[0] < 0 || aspect[1] < 0) {
        throw FormatError("\"aspect\" must be [start, end]", line_no);
      }
      sample.aspect_begin = static_cast<std::size_t>(aspect[0]);
      sample.aspect_end = static_cast<std::size_t>(aspect[1]);
      sample.label = doc.at("label").get<int>();
    } catch (const json::exception& e) {
      throw FormatError(e.what(), line_no);
    }
    try {
      validate_sample(sample);
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
    samples.push_back(std::move(sample));
  }
  return samples;
}

std::string to_jsonl(const std::vector<ParseSample>& samples) {
  std::string out;
  for (const ParseSample& s : samples) {
    json doc = {{"tokens", s.tokens},
                {"heads", s.heads},
                {"deprels", s.deprels},
                {"aspect", {s.aspect_begin, s.aspect_end}},
                {"label", s.label}};
    out += doc.dump();
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::vector<ParseSample> load_jsonl(const std::filesystem::path& path) {
  try {
    return parse_jsonl(read_text_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void save_jsonl(const std::filesystem::path& path, const std::vector<ParseSample>& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << to_jsonl(samples);
}

std::vector<ParseSample> load_samples(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".conllu" || ext == ".conll") {
    try {
      return parse_conllu(read_text_file(path));
    } catch (const FormatError& e) {
      throw FormatError(path.string() + ": " + e.what());
    }
  }
  return load_jsonl(path);
}

}  // namespace lginet
