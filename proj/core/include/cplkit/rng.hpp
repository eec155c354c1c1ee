// Small deterministic RNG (splitmix64). The standard distributions are not
// bit-portable across library implementations, and battery generation has to
// be reproducible from a seed everywhere, so we roll the few draws we need.
#pragma once

#include <cstdint>

namespace cplkit {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n); n must be nonzero.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  bool coin() { return (next() & 1u) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace cplkit
