#include "noiselab/random.hpp"

#include <cmath>

namespace noiselab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t shard) {
  return splitmix64(splitmix64(master) ^ (shard * 0xd1b54a32d192ed03ULL + 1));
}

double Rng::exp1() { return -std::log1p(-uniform01()); }

std::uint64_t Rng::below(std::uint64_t bound) {
  const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - bound + 1) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= limit) return r % bound;
  }
}

}  // namespace noiselab
