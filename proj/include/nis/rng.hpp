#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace nis {

using Rng = std::mt19937_64;

/// One SplitMix64 step. Used only for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic substream seed for (seed, stream). Replicates, permutation
/// rounds and iterations each draw from their own generator so that results
/// do not depend on evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
  splitmix64(s);
  return splitmix64(s);
}

/// Unbiased draw from {0, ..., bound-1} by rejection sampling.
inline std::uint64_t bounded_u64(std::uint64_t bound, Rng& rng) {
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

/// Fisher-Yates permutation of {0, ..., n-1}.
inline std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(bounded_u64(static_cast<std::uint64_t>(i) + 1, rng));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

}  // namespace nis
