#pragma once

// Seeded random streams. Values are derived with integer arithmetic only, so
// a given seed yields the same sequence on every platform and standard
// library (std::uniform_real_distribution does not guarantee that).

#include <cstdint>
#include <random>
#include <string_view>

namespace boidsense {

inline constexpr std::string_view kGeneratorId = "mt19937_64/splitmix64-substreams/u53";

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed of the named sub-stream of `root`.
constexpr std::uint64_t substream_seed(std::uint64_t root, std::string_view name) {
  return splitmix64(root ^ fnv1a64(name));
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace boidsense
