#pragma once

#include <cstdint>
#include <random>

namespace irvlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream seed for the (a, b) cell under a root seed. Every
// stochastic loop derives its per-item generator this way so results do not
// depend on how items are scheduled across threads.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(splitmix64(root) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

inline std::mt19937_64 make_rng(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0) {
  return std::mt19937_64(derive_seed(root, a, b));
}

}  // namespace irvlab
