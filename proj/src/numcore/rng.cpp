#include "lginet/numcore/rng.hpp"

#include <limits>

#include "lginet/errors.hpp"

namespace lginet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw ContractError("Rng::index: empty range");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return static_cast<std::size_t>(draw % bound);
}

Rng Rng::fork(std::uint64_t stream) {
  return Rng(splitmix64(engine_() ^ splitmix64(stream)));
}

}  // namespace lginet
