#pragma once

#include <cstdint>

namespace driftlab {

// Counter-based generator: every variate is a pure function of
// (seed, trial, step, salt), so parallel trials replay bit-identically in any
// schedule.
struct CounterRng {
  std::uint64_t seed = 0;

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t bits(std::uint64_t trial, std::uint64_t step, std::uint64_t salt = 0) const {
    std::uint64_t h = mix(seed ^ 0x2545f4914f6cdd1dULL);
    h = mix(h ^ trial);
    h = mix(h ^ step);
    if (salt) h = mix(h ^ salt);
    return h;
  }

  double uniform(std::uint64_t trial, std::uint64_t step, std::uint64_t salt = 0) const {
    return static_cast<double>(bits(trial, step, salt) >> 11) * 0x1.0p-53;
  }
};

}  // namespace driftlab
