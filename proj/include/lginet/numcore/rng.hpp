#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace lginet {

// Seeded random source with platform-independent derived distributions.
// std::uniform_*_distribution are implementation-defined, so the reductions
// from raw 64-bit draws are done here to keep runs reproducible everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);

  bool bernoulli(double p) { return uniform() < p; }

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  // Independent child stream; deterministic in (current state, stream id).
  Rng fork(std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

}  // namespace lginet
