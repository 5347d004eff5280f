#ifndef LCAE_RNG_HPP_
#define LCAE_RNG_HPP_

#include <cstdint>
#include <cmath>

namespace lcae {

// splitmix64: the project-wide deterministic generator. Chosen over
// std::mt19937_64 + <random> distributions because the standard does not
// pin distribution output across implementations; every artifact that must
// regenerate bit-exactly (sensing matrices, weight init) goes through this.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53-bit resolution
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [-1, 1)
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  // unbiased integer in [0, bound) via rejection
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0ULL - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // standard normal via Box-Muller; draws exactly two uniforms per call
  double next_gaussian() {
    double u1 = next_unit();
    double u2 = next_unit();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace lcae

#endif  // LCAE_RNG_HPP_
