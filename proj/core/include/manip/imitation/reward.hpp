#ifndef MANIP_IMITATION_REWARD_HPP_
#define MANIP_IMITATION_REWARD_HPP_

#include "manip/imitation/clip.hpp"
#include "manip/physics/world.hpp"

namespace manip {

struct RewardConfig {
  // Term weights.
  double w_od = 4.0;
  double w_or = 4.0;
  double w_hd = 0.05;
  double w_hr = 0.05;
  double w_hj = 0.1;
  // Exponential scales, per squared unit.
  double k_od = 200.0;  // 1/m^2
  double k_or = 1.8;    // 1/rad^2
  double k_hd = 50.0;   // 1/m^2
  double k_hr = 1.0;    // 1/rad^2
  double k_hj = 1.0;    // 1/rad^2

  double max_total() const { return w_od + w_or + w_hd + w_hr + w_hj; }
};

struct RewardTerms {
  double od = 0.0;  // object position
  double orr = 0.0; // object rotation
  double hd = 0.0;  // hand link positions
  double hr = 0.0;  // hand link rotations
  double hj = 0.0;  // hand joint angles
  double total = 0.0;
};

struct TerminationThresholds {
  double d_thr = 0.10;        // m
  double phi_thr = M_PI / 3;  // rad
};

RewardTerms compute_reward(const SimWorld& sim, const ReferenceClip& clip,
                           int step_index, double control_rate,
                           const RewardConfig& cfg);

// True when the object has strayed from the reference beyond either bound.
bool check_termination(const Pose2& sim_object, const Pose2& ref_object,
                       const TerminationThresholds& thr);

}  // namespace manip

#endif  // MANIP_IMITATION_REWARD_HPP_
