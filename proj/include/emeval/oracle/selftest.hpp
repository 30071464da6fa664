#pragma once

#include <cstdint>
#include <ostream>

#include "emeval/map.hpp"
#include "emeval/rng.hpp"

namespace emeval::oracle {

// Random map with side lengths in [1, max_side] and a random foreground
// density; optionally redrawn until it is not constant.
BinaryMap random_binary_map(Rng& rng, int max_side, bool non_constant);
BinaryMap random_binary_map(Rng& rng, Dimensions d, bool non_constant);

struct SelftestOptions {
  int pairs = 100;
  int max_side = 64;
  std::uint64_t seed = 7;
};

// Compares the optimized measures against the naive references on random
// map pairs, printing one line per check. Returns true when all pass.
bool run_selftest(std::ostream& out, const SelftestOptions& opts = {});

}  // namespace emeval::oracle
