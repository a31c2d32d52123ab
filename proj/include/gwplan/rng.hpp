#pragma once
// Deterministic randomness built on SplitMix64. The same generator serves two
// roles: a sequential stream (topology generation) and, through key mixing, a
// counter-based source where the draw for a given key is independent of
// evaluation order. The latter is what makes parallel and serial graph builds
// bit-identical.
//
// Everything here is integer arithmetic plus IEEE-754 double operations with
// fixed operand order, so results are reproducible across platforms.

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace gwplan {

// Finalizer from the SplitMix64 reference implementation.
inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64_mix(state_);
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller. Always consumes exactly two draws, so
  // stream positions stay predictable.
  double next_normal() {
    double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    double u2 = static_cast<double>(next() >> 11) * 0x1.0p-53;        // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

// Order-sensitive key mixing: hash_combine(hash_combine(s, a), b) differs
// from the (b, a) order. The golden-ratio offsets keep zero keys from
// collapsing (splitmix64_mix(0) == 0).
inline constexpr std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
  return splitmix64_mix(h + 0x9e3779b97f4a7c15ULL + splitmix64_mix(v + 0x9e3779b97f4a7c15ULL));
}

inline std::uint64_t hash_combine(std::uint64_t h, double v) {
  return hash_combine(h, std::bit_cast<std::uint64_t>(v));
}

// One shadowing draw per unordered node pair, keyed by (seed, lo, hi).
// Symmetric by construction and independent of traversal order.
inline double pair_normal(std::uint64_t seed, std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  SplitMix64 rng(hash_combine(hash_combine(seed, static_cast<std::uint64_t>(a)),
                              static_cast<std::uint64_t>(b)));
  return rng.next_normal();
}

}  // namespace gwplan
