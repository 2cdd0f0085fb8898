#pragma once

// Counter-based random streams.
//
// Every Monte Carlo sample draws from its own stream, keyed by the pair
// (master seed, sample index).  The key is turned into a SplitMix64 state by
//
//     state = mix64(mix64(seed ^ kSeedSalt) ^ mix64(index ^ kIndexSalt))
//
// where mix64 is the SplitMix64 finalizer (a bijection on 64-bit words).  The
// stream then advances as standard SplitMix64.  Because a sample's stream
// depends on nothing but (seed, index), estimator results do not depend on
// how samples are split across workers or in which order they run.
//
// Bounded integers are drawn by rejection sampling rather than through
// std::uniform_int_distribution, whose algorithm is implementation-defined
// and would make outputs differ between standard libraries.

#include <cstdint>
#include <limits>

namespace lawless {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t state = 0) noexcept : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

inline constexpr std::uint64_t kSeedSalt = 0x6c61776c65737331ULL;
inline constexpr std::uint64_t kIndexSalt = 0x9e3779b97f4a7c15ULL;

/// The random source for sample `index` under master seed `seed`.
constexpr SplitMix64 substream(std::uint64_t seed, std::uint64_t index) noexcept {
  return SplitMix64(mix64(mix64(seed ^ kSeedSalt) ^ mix64(index ^ kIndexSalt)));
}

/// Derives an independent master seed for one row of an experiment table.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept {
  return mix64(seed ^ mix64(tag + 0x726f77ULL));
}

/// Uniform integer in [0, bound).  `bound` must be positive.
template <class Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t r = rng();
    if (r < limit) return r % bound;
  }
}

}  // namespace lawless
