#ifndef MANIP_IMITATION_SCENE_HPP_
#define MANIP_IMITATION_SCENE_HPP_

#include <vector>

#include "manip/physics/stable_pd.hpp"
#include "manip/physics/world.hpp"

namespace manip {

// Everything needed to instantiate a fresh SimWorld for one episode:
// contact/solver settings, hand models with initial states, and the object.
struct SceneTemplate {
  double substep_rate = 600.0;
  double control_rate = 30.0;
  Vec2 gravity{0.0, 0.0};  // in-hand clips default to gravity off
  ContactParams contact;
  bool self_collision = false;

  std::vector<HandModel> hands;
  std::vector<JointState> hand_init;

  ConvexDecomposition object;
  Pose2 object_pose;

  // Evaluation-time dynamics variation.
  double object_mass_scale = 1.0;
  double friction_scale = 1.0;

  int total_joints() const;
  int total_links() const;
  SimWorld instantiate() const;
};

}  // namespace manip

#endif  // MANIP_IMITATION_SCENE_HPP_
