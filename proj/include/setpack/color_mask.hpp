#pragma once

#include <array>
#include <bit>
#include <cstdint>

namespace setpack {

// Color sets as bitmasks.  Mask64 covers up to 64 colors and is the fast
// path; Mask256 covers the widest configuration this build accepts.

struct Mask64 {
  uint64_t bits = 0;

  static constexpr int capacity() { return 64; }

  void set(int c) { bits |= uint64_t{1} << c; }
  bool test(int c) const { return (bits >> c) & 1; }
  int count() const { return std::popcount(bits); }
  bool intersects(const Mask64& o) const { return (bits & o.bits) != 0; }
  bool empty() const { return bits == 0; }
  bool covers(const Mask64& o) const { return (bits & o.bits) == o.bits; }
  Mask64 without(const Mask64& o) const { return Mask64{bits & ~o.bits}; }

  friend Mask64 operator|(Mask64 a, Mask64 b) { return Mask64{a.bits | b.bits}; }
  friend Mask64 operator&(Mask64 a, Mask64 b) { return Mask64{a.bits & b.bits}; }
  friend bool operator==(const Mask64& a, const Mask64& b) { return a.bits == b.bits; }
  friend bool operator<(const Mask64& a, const Mask64& b) { return a.bits < b.bits; }
};

struct Mask256 {
  std::array<uint64_t, 4> w{};

  static constexpr int capacity() { return 256; }

  void set(int c) { w[c >> 6] |= uint64_t{1} << (c & 63); }
  bool test(int c) const { return (w[c >> 6] >> (c & 63)) & 1; }

  int count() const {
    int n = 0;
    for (uint64_t x : w) n += std::popcount(x);
    return n;
  }

  bool intersects(const Mask256& o) const {
    for (int i = 0; i < 4; ++i) {
      if (w[i] & o.w[i]) return true;
    }
    return false;
  }

  bool empty() const { return count() == 0; }

  bool covers(const Mask256& o) const {
    for (int i = 0; i < 4; ++i) {
      if ((w[i] & o.w[i]) != o.w[i]) return false;
    }
    return true;
  }

  Mask256 without(const Mask256& o) const {
    Mask256 r = *this;
    for (int i = 0; i < 4; ++i) r.w[i] &= ~o.w[i];
    return r;
  }

  friend Mask256 operator|(Mask256 a, const Mask256& b) {
    for (int i = 0; i < 4; ++i) a.w[i] |= b.w[i];
    return a;
  }
  friend Mask256 operator&(Mask256 a, const Mask256& b) {
    for (int i = 0; i < 4; ++i) a.w[i] &= b.w[i];
    return a;
  }
  friend bool operator==(const Mask256& a, const Mask256& b) { return a.w == b.w; }
  friend bool operator<(const Mask256& a, const Mask256& b) {
    for (int i = 3; i >= 0; --i) {
      if (a.w[i] != b.w[i]) return a.w[i] < b.w[i];
    }
    return false;
  }
};

}  // namespace setpack
