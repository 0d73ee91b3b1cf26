#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace ergraph {

/// Identifies one reproducible random substream: the experiment seed plus
/// the trial index.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256** keyed per (seed, stream) through splitmix64.
///
/// Every (master_seed, stream_id) pair maps to its own 256-bit state, so the
/// stream space has 2^64 entries per master seed. Satisfies
/// UniformRandomBitGenerator.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  static constexpr std::string_view name() noexcept {
    return "xoshiro256** (splitmix64-keyed streams)";
  }

  explicit StreamRng(SeedSpec seed) noexcept {
    std::uint64_t key = splitmix64_mix(seed.master_seed + 0x9e3779b97f4a7c15ULL) ^
                        splitmix64_mix(seed.stream_id ^ 0xd1b54a32d192ed03ULL);
    for (auto& word : state_) {
      key += 0x9e3779b97f4a7c15ULL;
      word = splitmix64_mix(key);
    }
    // All-zero state is the one forbidden xoshiro state.
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
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

  /// Uniform on (0, 1]; never returns 0 so logarithms are finite.
  double uniform_open_closed() noexcept {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace ergraph
