#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace pamab {

enum class StreamRole : std::uint64_t {
  reward = 1,
  preference = 2,
  policy = 3,
  protocol = 4,
};

std::string_view to_string(StreamRole role);

// SplitMix64 finalizer, used to key streams.
std::uint64_t mix64(std::uint64_t x);

// Single-owner random stream. The engine is std::mt19937_64 (bit-exact by the
// standard); distributions are implemented here so draws are reproducible
// across standard library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : engine_(key) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1) with 53 bits of resolution.
  double uniform();

  // Uniform integer in [0, n). Requires n > 0.
  std::uint64_t uniform_index(std::uint64_t n);

  // Standard normal via Box-Muller (one variate per pair of uniforms).
  double gaussian();

 private:
  std::mt19937_64 engine_;
};

// Stream uniquely determined by (base_seed, trial, role), independent of the
// order in which streams are created.
RandomStream derive_rng_stream(std::uint64_t base_seed, std::uint64_t trial, StreamRole role);

}  // namespace pamab
