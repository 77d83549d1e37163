#ifndef MANIP_IMITATION_OBSERVATION_HPP_
#define MANIP_IMITATION_OBSERVATION_HPP_

#include <vector>

#include "manip/imitation/clip.hpp"
#include "manip/physics/world.hpp"

namespace manip {

// Fixed observation layout, per hand count H, joints-per-hand J, and link
// count N (all hands combined):
//   sim hand state        H * (4 + 2J)   root x, y, cos, sin; per joint cos, sin
//   sim hand velocity     H * (3 + J)    root vx, vy, omega; per joint qdot
//   sim object            7              x, y, cos, sin, vx, vy, omega
//   ref hand state        H * (4 + 2J)
//   ref object            4              x, y, cos, sin
//   hand difference       H * (3 + J)    ref minus sim, angles wrapped
//   object difference     3              ref minus sim, angle wrapped
//   contact vector        N              per-link sensed contact force, N
struct ObservationLayout {
  int num_hands = 1;
  int joints_per_hand = 6;
  int num_links = 7;

  int dim() const {
    int h = num_hands;
    int j = joints_per_hand;
    return h * (4 + 2 * j) + h * (3 + j) + 7 + h * (4 + 2 * j) + 4 +
           h * (3 + j) + 3 + num_links;
  }
};

// Assembles the observation at one control step. `contacts` is the flattened
// per-link contact sensor reading across hands.
std::vector<double> build_observation(const SimWorld& sim,
                                      const ReferenceClip& clip, int step_index,
                                      double control_rate,
                                      const std::vector<double>& contacts);

}  // namespace manip

#endif  // MANIP_IMITATION_OBSERVATION_HPP_
