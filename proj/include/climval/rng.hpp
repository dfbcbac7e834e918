#pragma once

#include <cstdint>
#include <random>

namespace climval {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream per (seed, path index). The Gaussian draws are produced
// by Box-Muller on raw 53-bit uniforms so the output is identical across
// standard library implementations.
class PathRng {
 public:
  PathRng(std::uint64_t seed, std::uint64_t path_index)
      : eng_(splitmix64(splitmix64(seed) ^ splitmix64(path_index + 0x5bf0a8dcULL))) {}

  double uniform() {
    // in (0, 1]
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace climval
