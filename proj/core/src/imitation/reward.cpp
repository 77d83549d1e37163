#include "manip/imitation/reward.hpp"

#include <cmath>

namespace manip {

RewardTerms compute_reward(const SimWorld& sim, const ReferenceClip& clip,
                           int step_index, double control_rate,
                           const RewardConfig& cfg) {
  ReferenceClip::Frame ref = clip.sample_step(step_index, control_rate);
  const RigidBody& obj = sim.bodies[sim.object_body];

  double od2 = (ref.object.p - obj.pose.p).length_sq();
  double dth = angle_diff(ref.object.angle, obj.pose.angle);
  double or2 = dth * dth;

  double hd2 = 0.0, hr2 = 0.0, hj2 = 0.0;
  int jph = clip.joints_per_hand;
  for (size_t h = 0; h < sim.hands.size(); ++h) {
    const HandModel& model = sim.hands[h].model;
    JointState s = get_hand_state(sim, static_cast<int>(h));

    JointState r;
    r.root_pose = ref.roots[h];
    r.q.assign(ref.q.begin() + h * jph, ref.q.begin() + (h + 1) * jph);
    r.qdot.assign(jph, 0.0);

    std::vector<Pose2> sim_links = forward_kinematics(model, s);
    std::vector<Pose2> ref_links = forward_kinematics(model, r);
    for (size_t i = 0; i < sim_links.size(); ++i) {
      hd2 += (ref_links[i].p - sim_links[i].p).length_sq();
      double da = angle_diff(ref_links[i].angle, sim_links[i].angle);
      hr2 += da * da;
    }
    for (int j = 0; j < jph; ++j) {
      double dq = angle_diff(r.q[j], s.q[j]);
      hj2 += dq * dq;
    }
  }

  RewardTerms out;
  out.od = std::exp(-cfg.k_od * od2);
  out.orr = std::exp(-cfg.k_or * or2);
  out.hd = std::exp(-cfg.k_hd * hd2);
  out.hr = std::exp(-cfg.k_hr * hr2);
  out.hj = std::exp(-cfg.k_hj * hj2);
  out.total = cfg.w_od * out.od + cfg.w_or * out.orr + cfg.w_hd * out.hd +
              cfg.w_hr * out.hr + cfg.w_hj * out.hj;
  return out;
}

bool check_termination(const Pose2& sim_object, const Pose2& ref_object,
                       const TerminationThresholds& thr) {
  if ((sim_object.p - ref_object.p).length() > thr.d_thr) return true;
  return std::fabs(angle_diff(sim_object.angle, ref_object.angle)) > thr.phi_thr;
}

}  // namespace manip
