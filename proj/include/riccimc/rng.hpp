#pragma once

#include <cmath>
#include <cstdint>

namespace riccimc {

/// Seeded PRNG with explicit substreams (xoshiro256** core, splitmix64 seeding).
///
/// Two sources built from the same (seed, stream_id) produce bit-identical
/// sequences on any platform; distinct stream ids give statistically
/// independent streams, so per-realization substreams can run in parallel
/// without coordination. The standard library engines are avoided because
/// their real-valued distributions are implementation-defined, which would
/// break byte-for-byte reproducibility of experiment outputs.
class RandomSource {
public:
  explicit RandomSource(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_(stream_id) {
    std::uint64_t x = seed;
    for (auto& s : state_) s = splitmix64(x);
    // Fold the stream id in through a second splitmix chain so that
    // (seed, k) and (seed, k') differ in every word of state.
    std::uint64_t y = stream_id * 0x9E3779B97F4A7C15ULL + 0x8000000000000001ULL;
    for (auto& s : state_) s ^= splitmix64(y);
    if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0)
      state_[0] = 1;  // all-zero state is the one forbidden seed
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard exponential variate via inversion.
  double next_exponential() { return -std::log1p(-next_double()); }

private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t state_[4];
};

}  // namespace riccimc
