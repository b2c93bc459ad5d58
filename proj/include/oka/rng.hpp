#pragma once

#include <cstdint>

namespace oka {

// 64-bit finalizer (splitmix64). Used both for seed derivation and as the
// oracle's answer function, so tables are bit-exact across platforms.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seeded random stream (splitmix64). A master seed is split into independent
// substreams by tag so that coupled executions can share some streams and not
// others. Construction is O(1), so deriving a substream per trial is cheap.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), state_(mix64(seed)) {}

  uint64_t seed() const { return seed_; }

  uint64_t u64() {
    uint64_t r = mix64(state_);
    state_ += 0x9e3779b97f4a7c15ULL;
    return r;
  }

  // Uniform in [0, n), n >= 1.
  uint64_t below(uint64_t n) {
    uint64_t bound = ~uint64_t{0} - (~uint64_t{0} % n);
    uint64_t v;
    do {
      v = u64();
    } while (v >= bound);
    return v % n;
  }

  double uniform() { return (u64() >> 11) * 0x1.0p-53; }

  bool coin(double p) { return uniform() < p; }

  Rng substream(uint64_t tag) const { return Rng(mix64(seed_ ^ mix64(tag))); }

 private:
  uint64_t seed_;
  uint64_t state_;
};

}  // namespace oka
