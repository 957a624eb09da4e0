#pragma once

#include <cstdint>

namespace drkofn {

// Counter-friendly 64-bit generator (SplitMix64).  All randomness in this
// project flows through it so results are identical across platforms; the
// standard <random> distributions are implementation-defined and never used.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [0, range).  Rejection keeps it exactly uniform.
  std::uint64_t bounded(std::uint64_t range) {
    std::uint64_t threshold = (0 - range) % range;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % range;
    }
  }

  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(bounded(static_cast<std::uint64_t>(hi - lo) + 1));
  }
};

// Derives an independent stream key from (seed, stream).  Used to give each
// Monte Carlo trial or generated instance its own generator so work can be
// chunked without any stream overlapping another.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + stream * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace drkofn
