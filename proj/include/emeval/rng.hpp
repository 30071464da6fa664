#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace emeval {

// 64-bit FNV-1a. Used to key per-image random streams by image id, so it
// must not depend on the standard library's std::hash.
std::uint64_t fnv1a64(std::string_view s);

// SplitMix64 finalizer; mixes a seed into a well-distributed 64-bit state.
std::uint64_t splitmix64(std::uint64_t x);

// Portable deterministic generator: std::mt19937_64 (fully specified by the
// standard) plus hand-written uniform / normal transforms, because the
// distributions in <random> are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  // Independent stream for (master seed, key), e.g. the image id.
  static Rng stream(std::uint64_t master_seed, std::string_view key);
  static Rng stream(std::uint64_t master_seed, std::string_view key, std::uint64_t sub);

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer in [0, n), rejection sampled.
  std::uint64_t below(std::uint64_t n);
  // Uniform integer in [lo, hi].
  int range(int lo, int hi);
  // Normal(mean, stddev) by the Box-Muller transform.
  double normal(double mean, double stddev);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace emeval
