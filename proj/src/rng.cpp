#include "pamab/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pamab {

std::string_view to_string(StreamRole role) {
  switch (role) {
    case StreamRole::reward: return "reward";
    case StreamRole::preference: return "preference";
    case StreamRole::policy: return "policy";
    case StreamRole::protocol: return "protocol";
  }
  return "unknown";
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::uniform_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  // Rejection on the top multiple of n keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % n;
}

double RandomStream::gaussian() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RandomStream derive_rng_stream(std::uint64_t base_seed, std::uint64_t trial, StreamRole role) {
  std::uint64_t key = mix64(base_seed);
  key = mix64(key ^ mix64(trial + 0x632be59bd9b4e019ULL));
  key = mix64(key ^ mix64(static_cast<std::uint64_t>(role) * 0xd6e8feb86659fd93ULL));
  return RandomStream(key);
}

}  // namespace pamab
