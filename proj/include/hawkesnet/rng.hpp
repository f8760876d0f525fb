#pragma once

#include <cstdint>
#include <random>

namespace hawkesnet {

using Engine = std::mt19937_64;

// Independent random streams used inside one simulated path.
enum class Stream : std::uint64_t {
  jumps = 1,
  brownian = 2,
  factor = 3,
  marks = 4,
  refine = 5,
  limit = 6,
};

std::uint64_t splitmix64(std::uint64_t x);

// Seed of path `index` in a batch driven by `seed`:
//   splitmix64(seed + 0x9E3779B97F4A7C15 * (index + 1)).
// Path results depend only on (seed, index), never on scheduling.
std::uint64_t path_seed(std::uint64_t seed, std::uint64_t index);

// Engine for one stream of a path: seeded with splitmix64(seed ^ (stream * 0xD1B54A32D192ED03)).
Engine make_engine(std::uint64_t seed, Stream stream);

}  // namespace hawkesnet
