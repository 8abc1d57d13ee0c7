#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace tsap {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Portable random stream: the draws depend only on the stream id, not on the
/// standard library's distribution implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t stream_id) : engine_(splitmix64(stream_id)) {}

  /// Stream for ant `ant` of iteration `iteration`: mix(seed) + iteration * ants + ant.
  /// The master seed is mixed first so that seeds s and s+1 do not share streams.
  static RandomStream for_ant(std::uint64_t seed, std::size_t iteration, std::size_t ants,
                              std::size_t ant) {
    return RandomStream(splitmix64(seed) + static_cast<std::uint64_t>(iteration) * ants + ant);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in {0, ..., n-1}; n must be > 0.
  std::size_t index(std::size_t n) {
    const auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tsap
