#pragma once

#include <complex>
#include <cstdint>

namespace bsfield {

// Counter-based generator: value(i) depends only on (seed, i), so streams are
// reproducible across platforms and call orders. Documented in the README so
// other implementations can generate identical probe fields.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t index) const {
    // splitmix64 finalizer over seed ^ (golden-ratio stride * (index+1))
    std::uint64_t z = seed_ ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1).
  double uniform(std::uint64_t index) const {
    return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
  }

  /// Uniform in [-1,1).
  double symmetric(std::uint64_t index) const { return 2.0 * uniform(index) - 1.0; }

  /// Complex with re, im uniform in [-1,1); consumes indices 2i and 2i+1.
  std::complex<double> complex_symmetric(std::uint64_t i) const {
    return {symmetric(2 * i), symmetric(2 * i + 1)};
  }

 private:
  std::uint64_t seed_;
};

}  // namespace bsfield
