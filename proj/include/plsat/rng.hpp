#pragma once

#include <cstdint>
#include <initializer_list>

namespace plsat {

// Deterministic random stream: xoshiro256** seeded through splitmix64.
//
// Streams are derived from a master seed plus a list of integer keys
// (e.g. {cell index, trial index}); each key is folded into the splitmix
// state before seed expansion, so (seed, keys...) -> stream is a pure
// function and distinct key tuples give independent-looking streams.
// The generator is fully specified here, so identical seeds reproduce
// identical draws across platforms and standard library versions.
//
// A stream is single-owner: never share one instance between threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) { reseed(seed, {}); }

  RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    reseed(seed, keys);
  }

  static RngStream derive(std::uint64_t seed, std::uint64_t a) { return RngStream(seed, {a}); }
  static RngStream derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return RngStream(seed, {a, b});
  }
  static RngStream derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return RngStream(seed, {a, b, c});
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1): never returns 0, suitable for inverse-CDF sampling.
  double next_open01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n >= 1. Rejection keeps it exactly uniform.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  bool coin() { return (next_u64() >> 63) != 0; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static std::uint64_t splitmix_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  void reseed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t state = seed;
    (void)splitmix_next(state);
    for (std::uint64_t k : keys) {
      state ^= splitmix_next(state) ^ (k + 0x9e3779b97f4a7c15ull);
      (void)splitmix_next(state);
    }
    for (auto& word : s_) word = splitmix_next(state);
    // xoshiro must not start from the all-zero state; splitmix output of
    // any state is nonzero in at least one of four consecutive words.
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9e3779b97f4a7c15ull;
  }

  std::uint64_t s_[4];
};

}  // namespace plsat
