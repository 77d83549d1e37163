#include "manip/physics/stable_pd.hpp"

#include <cmath>

namespace manip {

double stable_pd_torque(double q, double qdot, double q_target,
                        double kp, double kd, double dt, double inertia) {
  double raw = -kp * (q + dt * qdot - q_target) - kd * qdot;
  if (std::isinf(inertia)) return raw;
  return raw * inertia / (inertia + dt * kd);
}

double explicit_pd_torque(double q, double qdot, double q_target,
                          double kp, double kd, double /*dt*/) {
  return -kp * (q - q_target) - kd * qdot;
}

std::vector<double> hand_pd_actuation(const SimWorld& world, int hand_index,
                                      const PdTargets& targets) {
  const HandInstance& inst = world.hands[hand_index];
  const HandModel& model = inst.model;
  JointState s = get_hand_state(world, hand_index);
  double dt = world.dt;

  std::vector<double> act(3 + model.joint_count(), 0.0);
  auto critical = [](double kp, double kd, double inertia) {
    return kd > 0.0 ? kd : 2.0 * std::sqrt(kp * inertia);
  };
  double m = inst.root_eff_mass;
  double kp_lin = model.root_linear.kp;
  double kd_lin = critical(kp_lin, model.root_linear.kd, m);
  act[0] = stable_pd_torque(s.root_pose.p.x, s.root_lin_vel.x, targets.root.p.x,
                            kp_lin, kd_lin, dt, m);
  act[1] = stable_pd_torque(s.root_pose.p.y, s.root_lin_vel.y, targets.root.p.y,
                            kp_lin, kd_lin, dt, m);
  double inertia_root = inst.root_eff_inertia;
  double kp_ang = model.root_angular.kp;
  double kd_ang = critical(kp_ang, model.root_angular.kd, inertia_root);
  // Wrap the angular error so the root never unwinds the long way.
  double ang_err = angle_diff(s.root_pose.angle, targets.root.angle);
  act[2] = stable_pd_torque(ang_err, s.root_ang_vel, 0.0, kp_ang, kd_ang, dt,
                            inertia_root);

  for (int j = 0; j < model.joint_count(); ++j) {
    const PdGains& g = model.joints[j].gains;
    double inertia = inst.joint_eff_inertia[j];
    double kd = critical(g.kp, g.kd, inertia);
    double err = angle_diff(s.q[j], targets.q[j]);
    act[3 + j] = stable_pd_torque(err, s.qdot[j], 0.0, g.kp, kd, dt, inertia);
  }
  return act;
}

}  // namespace manip
