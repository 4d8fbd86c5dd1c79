#ifndef QUADPERM_RNG_HPP
#define QUADPERM_RNG_HPP

#include <cstdint>

namespace quadperm {

// Counter-based generator: value i of a seeded stream is splitmix64(seed, i).
// Stateless per index, so sweep workers can sample disjoint ranges without
// shared state and reproduce byte-identical output for a given seed.
inline std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Small sequential convenience wrapper over the same stream.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t next() { return splitmix64(seed_, counter_++); }
  // Uniform value in [0, n) by rejection-free reduction when n is a power
  // of two, multiplicative fold otherwise.
  std::uint64_t below(std::uint64_t n) {
    if ((n & (n - 1)) == 0) return next() & (n - 1);
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace quadperm

#endif
