#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace kawahara {

// Counter-based generator: every draw is a pure function of (seed, stream, counter).
// Ensemble members, shards and reruns are therefore reproducible regardless of
// evaluation order or thread count.  The mixing function is splitmix64 applied to
// a stream-salted key; the algorithm is fixed here so results are stable across
// platforms and standard-library versions (std engines make no such promise).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const {
    std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;  // salt the stream key
    z += 0x9e3779b97f4a7c15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0,1) with 53 random mantissa bits.
  double uniform01(std::uint64_t stream, std::uint64_t counter) const {
    return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; consumes logical counters 2k and 2k+1.
  double normal(std::uint64_t stream, std::uint64_t counter) const {
    double u1 = uniform01(stream, 2 * counter);
    double u2 = uniform01(stream, 2 * counter + 1);
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPiLocal * u2);
  }

  std::uint64_t seed() const { return seed_; }

  std::string description() const {
    return "splitmix64 counter generator, draw = mix(seed, stream, counter), seed=" +
           std::to_string(seed_);
  }

 private:
  static constexpr double kTwoPiLocal = 6.28318530717958647692528676655900577;
  std::uint64_t seed_;
};

}  // namespace kawahara
