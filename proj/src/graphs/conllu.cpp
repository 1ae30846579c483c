#include "lginet/graphs/conllu.hpp"

#include <charconv>
#include <string>

#include "lginet/errors.hpp"

namespace lginet {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool parse_int(std::string_view text, int& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

struct PendingSentence {
  ParseSample sample;
  std::vector<int> raw_heads;
  std::vector<std::size_t> lines;
  std::size_t first_line = 0;
};

void finish(PendingSentence& pending, std::vector<ParseSample>& out) {
  if (pending.sample.tokens.empty()) return;
  const int count = static_cast<int>(pending.sample.tokens.size());
  for (std::size_t i = 0; i < pending.raw_heads.size(); ++i) {
    const int head = pending.raw_heads[i];
    if (head < 0 || head > count) {
      throw FormatError("HEAD " + std::to_string(head) + " outside sentence of " +
                        std::to_string(count) + " tokens", pending.lines[i]);
    }
    pending.sample.heads.push_back(head == 0 ? kRootHead : head - 1);
  }
  try {
    validate_tree(pending.sample);
  } catch (const DataError& e) {
    throw FormatError(std::string("sentence is not a dependency tree: ") + e.what(), pending.first_line);
  }
  out.push_back(std::move(pending.sample));
  pending = PendingSentence{};
}

}  // namespace

std::vector<ParseSample> parse_conllu(std::string_view text) {
  std::vector<ParseSample> sentences;
  PendingSentence pending;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.empty()) {
      finish(pending, sentences);
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '#') continue;

    const auto fields = split_tabs(line);
    if (fields.size() != 10) {
      throw FormatError("expected 10 tab-separated columns, found " + std::to_string(fields.size()), line_no);
    }
    const std::string_view id = fields[0];
    if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) continue;

    int token_id = 0;
    if (!parse_int(id, token_id)) throw FormatError("non-integer ID '" + std::string(id) + "'", line_no);
    if (token_id != static_cast<int>(pending.sample.tokens.size()) + 1) {
      throw FormatError("ID " + std::to_string(token_id) + " out of sequence", line_no);
    }
    int head = 0;
    if (!parse_int(fields[6], head)) {
      throw FormatError("non-integer HEAD '" + std::string(fields[6]) + "'", line_no);
    }
    if (pending.sample.tokens.empty()) pending.first_line = line_no;
    pending.sample.tokens.emplace_back(fields[1]);
    pending.sample.deprels.emplace_back(fields[7]);
    pending.raw_heads.push_back(head);
    pending.lines.push_back(line_no);
    if (end == text.size()) break;
  }
  finish(pending, sentences);
  if (sentences.empty()) throw FormatError("no sentences found");
  return sentences;
}

}  // namespace lginet
