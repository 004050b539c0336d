#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace setpack {

// Deterministic 64-bit generator (splitmix64 core).  We avoid
// std::uniform_int_distribution on purpose: its output is not pinned down by
// the standard, and seeded runs must reproduce bit-for-bit everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n), n > 0.  Rejection sampling, no modulo bias.
  uint64_t below(uint64_t n) {
    const uint64_t limit = n * ((~uint64_t{0}) / n);
    uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  // Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  // Derives an independent stream seed from (base, index) pairs so trial i of
  // run s always sees the same bits no matter how work is scheduled.
  static uint64_t derive(uint64_t base, uint64_t index) {
    uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  uint64_t state_;
};

}  // namespace setpack
