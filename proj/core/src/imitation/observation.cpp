#include "manip/imitation/observation.hpp"

#include <cmath>

namespace manip {

std::vector<double> build_observation(const SimWorld& sim,
                                      const ReferenceClip& clip, int step_index,
                                      double control_rate,
                                      const std::vector<double>& contacts) {
  ReferenceClip::Frame ref = clip.sample_step(step_index, control_rate);
  int num_hands = static_cast<int>(sim.hands.size());

  std::vector<double> obs;
  obs.reserve(128);
  std::vector<JointState> states;
  for (int h = 0; h < num_hands; ++h) {
    states.push_back(get_hand_state(sim, h));
  }

  // Sim hand state.
  for (const JointState& s : states) {
    obs.push_back(s.root_pose.p.x);
    obs.push_back(s.root_pose.p.y);
    obs.push_back(std::cos(s.root_pose.angle));
    obs.push_back(std::sin(s.root_pose.angle));
    for (double q : s.q) {
      obs.push_back(std::cos(q));
      obs.push_back(std::sin(q));
    }
  }
  // Sim hand velocity.
  for (const JointState& s : states) {
    obs.push_back(s.root_lin_vel.x);
    obs.push_back(s.root_lin_vel.y);
    obs.push_back(s.root_ang_vel);
    for (double qd : s.qdot) obs.push_back(qd);
  }
  // Sim object.
  const RigidBody& obj = sim.bodies[sim.object_body];
  obs.push_back(obj.pose.p.x);
  obs.push_back(obj.pose.p.y);
  obs.push_back(std::cos(obj.pose.angle));
  obs.push_back(std::sin(obj.pose.angle));
  obs.push_back(obj.lin_vel.x);
  obs.push_back(obj.lin_vel.y);
  obs.push_back(obj.ang_vel);
  // Reference hand state.
  int jph = clip.joints_per_hand;
  for (int h = 0; h < num_hands; ++h) {
    const Pose2& root = ref.roots[h];
    obs.push_back(root.p.x);
    obs.push_back(root.p.y);
    obs.push_back(std::cos(root.angle));
    obs.push_back(std::sin(root.angle));
    for (int j = 0; j < jph; ++j) {
      double q = ref.q[h * jph + j];
      obs.push_back(std::cos(q));
      obs.push_back(std::sin(q));
    }
  }
  // Reference object.
  obs.push_back(ref.object.p.x);
  obs.push_back(ref.object.p.y);
  obs.push_back(std::cos(ref.object.angle));
  obs.push_back(std::sin(ref.object.angle));
  // Hand difference, reference minus sim.
  for (int h = 0; h < num_hands; ++h) {
    const JointState& s = states[h];
    obs.push_back(ref.roots[h].p.x - s.root_pose.p.x);
    obs.push_back(ref.roots[h].p.y - s.root_pose.p.y);
    obs.push_back(angle_diff(ref.roots[h].angle, s.root_pose.angle));
    for (int j = 0; j < jph; ++j) {
      obs.push_back(angle_diff(ref.q[h * jph + j], s.q[j]));
    }
  }
  // Object difference, reference minus sim.
  obs.push_back(ref.object.p.x - obj.pose.p.x);
  obs.push_back(ref.object.p.y - obj.pose.p.y);
  obs.push_back(angle_diff(ref.object.angle, obj.pose.angle));
  // Contact vector.
  obs.insert(obs.end(), contacts.begin(), contacts.end());
  return obs;
}

}  // namespace manip
