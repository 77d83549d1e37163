#include "manip/curriculum/testbed.hpp"

#include <cmath>

namespace manip {

TestbedEnv::TestbedEnv(double disturbance_gain, int horizon)
    : gain_(disturbance_gain), horizon_(horizon) {}

double TestbedEnv::disturbance(int t) const {
  return gain_ * std::sin(omega_ * t * kDt + phase_);
}

std::vector<double> TestbedEnv::observe() const {
  return {x_, v_, disturbance(t_)};
}

std::vector<double> TestbedEnv::reset(uint64_t seed) {
  Rng rng(hash_combine(seed, 0x7e57));
  x_ = rng.uniform(-0.2, 0.2);
  v_ = 0.0;
  t_ = 0;
  omega_ = rng.uniform(0.5, 1.5);
  phase_ = rng.uniform(0.0, 2.0 * M_PI);
  done_ = false;
  return observe();
}

StepResult TestbedEnv::step(const std::vector<double>& action) {
  StepResult out;
  if (done_) {
    out.obs = observe();
    out.done = true;
    return out;
  }
  double a = clamp(action[0], -kActionBound, kActionBound);
  v_ += (a + disturbance(t_)) * kDt;
  v_ *= 0.98;
  x_ += v_ * kDt;
  ++t_;

  double r = std::exp(-kRewardScale * x_ * x_);
  out.reward = r;
  out.tracking = r;
  if (std::fabs(x_) > kTerminationDistance || t_ >= horizon_) done_ = true;
  out.done = done_;
  out.obs = observe();
  return out;
}

}  // namespace manip
