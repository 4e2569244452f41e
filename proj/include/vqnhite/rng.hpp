#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace vqnhite {

using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits of the generator. Used instead
// of std::uniform_real_distribution so that streams are identical across
// standard library implementations.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_range(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

// splitmix64 finalizer; decorrelates sequential seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent child seed for job `index` under `master`.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix_seed(master ^ mix_seed(index + 1));
}

// n i.i.d. Unif[-1, 1] draws, reproducible per seed.
inline std::vector<double> uniform_fields(std::uint64_t seed, int n) {
  Rng rng(seed);
  std::vector<double> fields(static_cast<std::size_t>(n));
  for (auto& f : fields) f = uniform_range(rng, -1.0, 1.0);
  return fields;
}

}  // namespace vqnhite
