#ifndef MANIP_RNG_HPP_
#define MANIP_RNG_HPP_

#include <cstdint>

namespace manip {

// Small deterministic generator (PCG-XSH-RR). Hand state around explicitly so
// rollouts reproduce bit-for-bit across library/compiler versions.
class Rng {
 public:
  explicit Rng(uint64_t seed) { reseed(seed); }

  void reseed(uint64_t seed);
  uint32_t next_u32();
  // Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  // Uniform integer in [0, n).
  uint32_t uniform_index(uint32_t n);
  // Standard normal via Box-Muller (cached pair).
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

 private:
  uint64_t state_ = 0;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

// Stateless 64-bit mix, used to derive decorrelated stream seeds.
uint64_t hash_combine(uint64_t a, uint64_t b);

}  // namespace manip

#endif  // MANIP_RNG_HPP_
