#pragma once

// Seeded, portable RNG. SplitMix64 as published by Steele/Lea/Vigna;
// uniform doubles take the top 53 bits; normal deviates come from Box-Muller
// in a fixed stream order so alternate implementations can reproduce the
// exact sample sequence.

#include <cmath>
#include <cstdint>
#include <utility>

#include "purifier/math.hpp"

namespace purifier {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // One Box-Muller pair; consumes exactly two uniforms, u1 first.
  std::pair<double, double> next_gaussian_pair() {
    double u1 = 1.0 - next_double();  // (0, 1], keeps the log finite
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * kPi * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace purifier
