#include "manip/imitation/scene.hpp"

namespace manip {

int SceneTemplate::total_joints() const {
  int n = 0;
  for (const HandModel& h : hands) n += h.joint_count();
  return n;
}

int SceneTemplate::total_links() const {
  int n = 0;
  for (const HandModel& h : hands) n += h.link_count();
  return n;
}

SimWorld SceneTemplate::instantiate() const {
  SimWorld world;
  world.dt = 1.0 / substep_rate;
  world.substeps_per_control =
      static_cast<int>(substep_rate / control_rate + 0.5);
  world.gravity = gravity;
  world.contact = contact;
  world.contact.mu *= friction_scale;
  world.self_collision = self_collision;

  for (size_t h = 0; h < hands.size(); ++h) {
    spawn_hand(world, hands[h], hand_init[h]);
  }

  ConvexDecomposition obj = object;
  obj.props.mass *= object_mass_scale;
  obj.props.inertia *= object_mass_scale;
  world.object_body = add_decomposed_body(world, obj, object_pose);
  return world;
}

}  // namespace manip
