#include "manip/rng.hpp"

#include <cmath>

namespace manip {

namespace {
constexpr uint64_t kMult = 6364136223846793005ULL;
constexpr uint64_t kInc = 1442695040888963407ULL;
}  // namespace

void Rng::reseed(uint64_t seed) {
  state_ = 0;
  has_cached_ = false;
  next_u32();
  state_ += seed;
  next_u32();
}

uint32_t Rng::next_u32() {
  uint64_t old = state_;
  state_ = old * kMult + kInc;
  uint32_t xorshifted = static_cast<uint32_t>(((old >> 18u) ^ old) >> 27u);
  uint32_t rot = static_cast<uint32_t>(old >> 59u);
  return (xorshifted >> rot) | (xorshifted << ((-rot) & 31));
}

double Rng::uniform() {
  return next_u32() * (1.0 / 4294967296.0);
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

uint32_t Rng::uniform_index(uint32_t n) {
  if (n <= 1) return 0;
  // Rejection sampling to avoid modulo bias.
  uint32_t limit = 0xffffffffu - 0xffffffffu % n;
  uint32_t r;
  do {
    r = next_u32();
  } while (r >= limit);
  return r % n;
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u1, u2;
  do {
    u1 = uniform();
  } while (u1 <= 1e-300);
  u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  cached_ = r * std::sin(a);
  has_cached_ = true;
  return r * std::cos(a);
}

uint64_t hash_combine(uint64_t a, uint64_t b) {
  uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

}  // namespace manip
