#ifndef MANIP_PHYSICS_STABLE_PD_HPP_
#define MANIP_PHYSICS_STABLE_PD_HPP_

#include <limits>
#include <vector>

#include "manip/physics/world.hpp"

namespace manip {

// Implicit PD torque evaluated at the predicted next position,
//   tau = (-kp (q + dt qdot - q_target) - kd qdot) * I / (I + dt kd).
// The trailing factor is the implicit-damping compensation that keeps the
// controller bounded at large kd/I ratios; with the default infinite
// inertia it reduces to the plain predicted-position PD law.
double stable_pd_torque(double q, double qdot, double q_target,
                        double kp, double kd, double dt,
                        double inertia = std::numeric_limits<double>::infinity());

// Explicit PD, tau = -kp (q - q_target) - kd qdot. Kept for comparison.
double explicit_pd_torque(double q, double qdot, double q_target,
                          double kp, double kd, double dt);

// Stable-PD torques for one hand: [root fx, fy, torque, joint torques...],
// using the hand's cached effective inertias. Root angle errors wrap.
// Diagnostic form of the controller; the simulation path solves the same
// law implicitly via set_hand_pd_targets.
std::vector<double> hand_pd_actuation(const SimWorld& world, int hand_index,
                                      const PdTargets& targets);

}  // namespace manip

#endif  // MANIP_PHYSICS_STABLE_PD_HPP_
