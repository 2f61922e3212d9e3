#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tlab {

// Seeded generator with distribution code written out here so that streams
// are bit-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent substream, e.g. one per worker or per trial.
  Rng split(std::uint64_t stream) const {
    std::uint64_t z = seed_mix(engine_() ^ (stream + 0x9e3779b97f4a7c15ULL));
    return Rng(z);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform in [lo, hi] rounded to a multiple of 1/1024. Quantized
  /// coordinates keep exact LP arithmetic on short integers.
  double quantized(double lo, double hi) {
    return std::round(uniform(lo, hi) * 1024.0) / 1024.0;
  }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

 private:
  static std::uint64_t seed_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  mutable std::mt19937_64 engine_;
};

}  // namespace tlab
