#ifndef CENTROID_RNG_HPP
#define CENTROID_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "centroid/linalg.hpp"

namespace centroid {

// Seeded direction sampler. The Gaussian deviates are produced by a
// hand-rolled Box-Muller transform so that streams are identical across
// standard library implementations.
class SphereSampler {
 public:
  SphereSampler(int dim, std::uint64_t seed) : dim_(dim), rng_(seed) {}

  Vec next() {
    Vec v(dim_);
    for (;;) {
      for (int i = 0; i < dim_; i += 2) {
        double u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        v[i] = r * std::cos(2.0 * M_PI * u2);
        if (i + 1 < dim_) v[i + 1] = r * std::sin(2.0 * M_PI * u2);
      }
      double n = norm2(v);
      if (n > 1e-8) return (1.0 / n) * v;
    }
  }

  double uniform01() {
    // top 53 bits, in (0,1]; never returns 0 so log() is safe
    std::uint64_t x = rng_();
    return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
  }

 private:
  int dim_;
  std::mt19937_64 rng_;
};

}  // namespace centroid

#endif
