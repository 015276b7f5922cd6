#pragma once

#include <cstdint>
#include <random>

namespace ilb {

using Rng = std::mt19937_64;

// splitmix64 step; used to decorrelate derived seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Stream seed for replication `index` under `base`. Two mixing rounds so
// that base seeds differing in a single bit give unrelated streams.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(splitmix64(base) ^ splitmix64(index + 1));
}

inline Rng make_rng(std::uint64_t base, std::uint64_t index = 0) {
  return Rng(derive_seed(base, index));
}

inline double uniform01(Rng& rng) {
  // 53-bit mantissa; avoids distribution implementation differences.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace ilb
