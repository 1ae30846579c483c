#include "lginet/numcore/param_store.hpp"

#include "lginet/errors.hpp"

namespace lginet {

Tensor ParamStore::add(const std::string& name, Tensor value) {
  if (contains(name)) throw ContractError("ParamStore: duplicate parameter '" + name + "'");
  value.set_requires_grad(true);
  index_.emplace(name, entries_.size());
  entries_.emplace_back(name, std::move(value));
  return entries_.back().second;
}

Tensor& ParamStore::get(const std::string& name) {
  auto it = index_.find(name);
  if (it == index_.end()) throw ContractError("ParamStore: no parameter '" + name + "'");
  return entries_[it->second].second;
}

const Tensor& ParamStore::get(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ContractError("ParamStore: no parameter '" + name + "'");
  return entries_[it->second].second;
}

std::size_t ParamStore::parameter_count() const {
  std::size_t total = 0;
  for (const auto& [name, t] : entries_) total += t.numel();
  return total;
}

void ParamStore::zero_grad() {
  for (auto& [name, t] : entries_) t.zero_grad();
}

std::vector<std::string> ParamStore::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [name, t] : entries_) out.push_back(name);
  return out;
}

ParamStore ParamStore::clone() const {
  ParamStore copy;
  for (const auto& [name, t] : entries_) copy.add(name, t.clone());
  return copy;
}

}  // namespace lginet
