#pragma once

#include <cstdint>
#include <limits>
#include <vector>

// Seeding and primitive draws are hand-rolled so that byte-identical output
// does not depend on standard-library internals (std::uniform_*_distribution
// and std::shuffle are implementation-defined).

namespace stumpboost {

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream `index` of a master seed: master ^ mix(index). Used for per-run and
// per-draw streams so parallel schedules cannot change results.
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index) {
  return master ^ mix64(index);
}

// Uniform double in [0, 1) from the top 53 bits of one generator call.
template <class Rng>
double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased draw from [0, n) by rejection.
template <class Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % n;
}

// In-place Fisher-Yates shuffle.
template <class Rng>
void shuffle_indices(std::vector<std::size_t>& idx, Rng& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(idx[i - 1], idx[j]);
  }
}

}  // namespace stumpboost
