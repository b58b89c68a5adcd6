#pragma once

#include <cstdint>
#include <random>

namespace galtor {

/// Deterministic seeded generator.  Bounded draws are done by hand because
/// std::uniform_int_distribution is implementation-defined and reports must
/// be byte-identical across platforms.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}

  uint64_t raw() { return eng(); }
  long below(long n) { return n <= 1 ? 0 : static_cast<long>(eng() % static_cast<uint64_t>(n)); }
  long range(long lo, long hi) { return lo + below(hi - lo + 1); }
  bool chance(long num, long den) { return below(den) < num; }
};

/// Stable derivation of per-item seeds from a base seed (splitmix64 step).
inline uint64_t derive_seed(uint64_t base, uint64_t index) {
  uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace galtor
