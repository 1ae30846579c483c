#include "lginet/model/word_vocab.hpp"

#include <set>

#include "lginet/errors.hpp"

namespace lginet {

WordVocab::WordVocab() : WordVocab(std::vector<std::string>{}) {}

WordVocab::WordVocab(const std::vector<std::string>& words) {
  words_.push_back(kUnkToken);
  index_.emplace(kUnkToken, kUnk);
  for (const std::string& w : words) {
    if (w == kUnkToken) throw ContractError("WordVocab: '" + kUnkToken + "' is reserved");
    if (index_.emplace(w, words_.size()).second) words_.push_back(w);
  }
}

std::size_t WordVocab::id(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? kUnk : it->second;
}

WordVocab build_word_vocab(const std::vector<ParseSample>& samples) {
  std::set<std::string> distinct;
  for (const ParseSample& s : samples) distinct.insert(s.tokens.begin(), s.tokens.end());
  distinct.erase(WordVocab::kUnkToken);
  return WordVocab(std::vector<std::string>(distinct.begin(), distinct.end()));
}

}  // namespace lginet
