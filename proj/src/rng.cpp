#include "hawkesnet/rng.hpp"

namespace hawkesnet {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t path_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
}

Engine make_engine(std::uint64_t seed, Stream stream) {
  const auto lane = static_cast<std::uint64_t>(stream);
  return Engine(splitmix64(seed ^ (lane * 0xD1B54A32D192ED03ULL)));
}

}  // namespace hawkesnet
