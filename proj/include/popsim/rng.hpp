#pragma once

#include <cstdint>
#include <stdexcept>

namespace popsim {

// 64-bit finalizer (SplitMix64 constants).
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Derives a sub-seed from a master seed and a salt (e.g. a population size),
// so that independent experiment rows never share streams.
inline constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t salt) noexcept {
  return mix64(master_seed ^ mix64(salt + 0x9E3779B97F4A7C15ull));
}

// Counter-based pseudorandom stream keyed by (master_seed, stream_index).
//
// Two key words are derived from the pair with the mix64 finalizer. Draw i
// of the stream is mix64(mix64(key1 + i * GAMMA) ^ key2), i.e. a keyed
// double-round finalizer applied to a Weyl sequence. The output is a pure
// function of (master_seed, stream_index, i): identical inputs replay the
// identical sequence on any platform, and distinct stream indices give
// unrelated key pairs, so one stream per trial can be handed to concurrent
// workers without any cross-trial coupling.
class rng_stream {
public:
  rng_stream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept {
    std::uint64_t h = mix64(master_seed ^ 0x6A09E667F3BCC909ull);
    h = mix64(h ^ stream_index);
    key1_ = h;
    key2_ = mix64(h ^ 0xBB67AE8584CAA73Bull);
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t z = key1_ + (counter_++) * 0x9E3779B97F4A7C15ull;
    return mix64(mix64(z) ^ key2_);
  }

  // Exactly uniform draw from [0, bound) by rejection: values below
  // 2^64 mod bound are discarded, so every residue is equally likely.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) {
      throw std::invalid_argument("next_below: bound must be positive");
    }
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) {
        return r % bound;
      }
    }
  }

private:
  std::uint64_t key1_ = 0;
  std::uint64_t key2_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace popsim
