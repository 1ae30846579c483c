#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lginet/numcore/tensor.hpp"

namespace lginet {

// Named, insertion-ordered collection of trainable tensors.
class ParamStore {
 public:
  using Entry = std::pair<std::string, Tensor>;

  // Registers `value` (marked requires_grad). Duplicate names are a ContractError.
  Tensor add(const std::string& name, Tensor value);

  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  Tensor& get(const std::string& name);
  const Tensor& get(const std::string& name) const;

  std::size_t size() const { return entries_.size(); }
  // Total scalar parameter count.
  std::size_t parameter_count() const;

  auto begin() { return entries_.begin(); }
  auto end() { return entries_.end(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  void zero_grad();
  std::vector<std::string> names() const;

  // Deep copy of values (gradients dropped).
  ParamStore clone() const;

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace lginet
