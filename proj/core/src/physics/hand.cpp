#include "manip/physics/hand.hpp"

#include <stdexcept>

namespace manip {

std::vector<int> HandModel::fingertip_links() const {
  std::vector<int> tips;
  for (const auto& chain : chains) {
    if (!chain.empty()) tips.push_back(chain.back());
  }
  return tips;
}

std::vector<Pose2> forward_kinematics(const HandModel& hand, const JointState& state) {
  if (static_cast<int>(state.q.size()) != hand.joint_count()) {
    throw std::invalid_argument("joint state size does not match hand model");
  }
  std::vector<Pose2> poses(hand.link_count());
  poses[0] = state.root_pose;
  // Joints are stored chain by chain, so parents always precede children.
  for (int j = 0; j < hand.joint_count(); ++j) {
    const HandJoint& joint = hand.joints[j];
    const Pose2& parent = poses[joint.parent_link];
    Vec2 anchor = parent.transform(joint.parent_anchor);
    double angle = parent.angle + joint.rest_angle + state.q[j];
    poses[joint.child_link] = Pose2(anchor, angle);
  }
  return poses;
}

HandModel make_two_finger_hand(const TwoFingerHandParams& p) {
  HandModel hand;
  hand.palm = {p.palm_a, p.palm_b, p.palm_radius};
  hand.palm_density = p.density;

  auto add_finger = [&](Vec2 base_anchor, double base_angle) {
    std::vector<int> chain;
    int parent = 0;
    Vec2 anchor = base_anchor;
    double rest = base_angle;
    for (int i = 0; i < p.links_per_finger; ++i) {
      HandLink link;
      link.length = p.link_length;
      link.radius = p.link_radius;
      link.density = p.density;
      hand.links.push_back(link);
      int flat = static_cast<int>(hand.links.size());  // palm is 0

      HandJoint joint;
      joint.parent_link = parent;
      joint.child_link = flat;
      joint.parent_anchor = anchor;
      joint.rest_angle = rest;
      joint.lo = -p.joint_limit;
      joint.hi = p.joint_limit;
      joint.gains = {p.joint_kp, 0.0};
      hand.joints.push_back(joint);

      chain.push_back(flat);
      parent = flat;
      anchor = {p.link_length, 0.0};
      rest = 0.0;
    }
    hand.chains.push_back(chain);
  };

  add_finger(p.palm_a, p.left_base_angle);
  add_finger(p.palm_b, p.right_base_angle);
  return hand;
}

}  // namespace manip
