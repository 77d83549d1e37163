#ifndef MANIP_PHYSICS_HAND_HPP_
#define MANIP_PHYSICS_HAND_HPP_

#include <vector>

#include "manip/math.hpp"
#include "manip/physics/narrowphase.hpp"

namespace manip {

struct PdGains {
  double kp = 0.0;
  double kd = 0.0;
};

// One articulated segment. Local frame: origin at the proximal joint,
// capsule running along +x.
struct HandLink {
  double length = 0.0;
  double radius = 0.0;
  double density = 600.0;  // kg/m^2
};

struct HandJoint {
  int parent_link = 0;  // index into the flat link list (0 = palm)
  int child_link = 0;
  Vec2 parent_anchor;   // joint position in the parent link frame
  double rest_angle = 0.0;  // child angle relative to parent at q = 0
  double lo = -2.5;
  double hi = 2.5;
  PdGains gains{300.0, 0.0};  // kd = 0 means critical damping at spawn
};

// Planar articulated hand: a palm (link 0) plus tree-structured finger
// chains of capsule links with revolute joints.
struct HandModel {
  CapsuleShape palm{{-0.06, 0.0}, {0.06, 0.0}, 0.015};
  double palm_density = 600.0;
  std::vector<HandLink> links;     // fingers only; link index i+1 in the flat list
  std::vector<HandJoint> joints;   // joint i drives flat link i+1
  std::vector<std::vector<int>> chains;  // flat link indices per finger
  PdGains root_linear{800.0, 0.0};   // kd = 0 means critical damping at spawn
  PdGains root_angular{80.0, 0.0};

  int link_count() const { return 1 + static_cast<int>(links.size()); }
  int joint_count() const { return static_cast<int>(joints.size()); }
  // Distal link of each chain.
  std::vector<int> fingertip_links() const;
};

struct JointState {
  Pose2 root_pose;
  Vec2 root_lin_vel;
  double root_ang_vel = 0.0;
  std::vector<double> q;
  std::vector<double> qdot;
};

// World-frame pose of every link, root first, chain order stable.
std::vector<Pose2> forward_kinematics(const HandModel& hand, const JointState& state);

struct TwoFingerHandParams {
  Vec2 palm_a{-0.06, 0.0};
  Vec2 palm_b{0.06, 0.0};
  double palm_radius = 0.015;
  int links_per_finger = 3;
  double link_length = 0.05;
  double link_radius = 0.012;
  double density = 600.0;
  double joint_kp = 300.0;
  double joint_limit = 2.6;
  // Rest angle of each finger's first joint, measured from the palm's +x
  // axis; inner joints start straight.
  double left_base_angle = 1.2;
  double right_base_angle = 1.94;
};

// The default planar hand: palm plus two fingers of three links (J = 6,
// N_links = 7).
HandModel make_two_finger_hand(const TwoFingerHandParams& params = {});

}  // namespace manip

#endif  // MANIP_PHYSICS_HAND_HPP_
