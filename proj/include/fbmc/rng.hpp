#pragma once

#include <cstdint>
#include <random>

namespace fbmc {

using Rng = std::mt19937_64;

// Counter-based stream split: the seed of (stream, counter) depends only on
// the master seed, so trials can be scheduled on any worker.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t counter = 0);

inline Rng make_rng(std::uint64_t master, std::uint64_t stream,
                    std::uint64_t counter = 0) {
  return Rng(derive_seed(master, stream, counter));
}

}  // namespace fbmc
