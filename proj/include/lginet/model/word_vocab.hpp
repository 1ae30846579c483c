#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "lginet/graphs/parse_sample.hpp"

namespace lginet {

// Token -> embedding row. Row 0 is reserved for unknown tokens.
class WordVocab {
 public:
  static constexpr std::size_t kUnk = 0;
  static inline const std::string kUnkToken = "<unk>";

  WordVocab();
  // `words` must not contain the unknown token; duplicates are ignored.
  explicit WordVocab(const std::vector<std::string>& words);

  std::size_t id(const std::string& token) const;
  const std::string& word(std::size_t id) const { return words_.at(id); }
  std::size_t size() const { return words_.size(); }
  // Every word including the unknown token, in id order.
  const std::vector<std::string>& words() const { return words_; }

  bool operator==(const WordVocab& other) const { return words_ == other.words_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Sorted distinct tokens of the split.
WordVocab build_word_vocab(const std::vector<ParseSample>& samples);

}  // namespace lginet
