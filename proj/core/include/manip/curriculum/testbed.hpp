#ifndef MANIP_CURRICULUM_TESTBED_HPP_
#define MANIP_CURRICULUM_TESTBED_HPP_

#include "manip/imitation/env.hpp"

namespace manip {

// 1-DOF point tracking under a sinusoidal disturbance whose amplitude is the
// shape's difficulty. The agent applies a bounded acceleration; disturbances
// above the bound cannot be cancelled, which makes those shapes unsolvable
// by construction. Fast enough to exercise the curriculum scheduler in
// seconds.
class TestbedEnv : public Env {
 public:
  explicit TestbedEnv(double disturbance_gain, int horizon = 60);

  int obs_dim() const override { return 3; }  // x, v, current disturbance
  int action_dim() const override { return 1; }
  int horizon() const override { return horizon_; }
  std::vector<double> reset(uint64_t seed) override;
  StepResult step(const std::vector<double>& action) override;

  static constexpr double kDt = 0.1;
  static constexpr double kActionBound = 1.0;
  static constexpr double kTerminationDistance = 0.5;
  static constexpr double kRewardScale = 10.0;  // r = exp(-scale * x^2)

 private:
  double disturbance(int t) const;
  std::vector<double> observe() const;

  double gain_;
  int horizon_;
  double x_ = 0.0;
  double v_ = 0.0;
  int t_ = 0;
  double omega_ = 1.0;
  double phase_ = 0.0;
  bool done_ = false;
};

}  // namespace manip

#endif  // MANIP_CURRICULUM_TESTBED_HPP_
