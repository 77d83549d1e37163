#ifndef MANIP_PHYSICS_WORLD_HPP_
#define MANIP_PHYSICS_WORLD_HPP_

#include <vector>

#include "manip/physics/hand.hpp"
#include "manip/physics/narrowphase.hpp"

namespace manip {

struct ContactParams {
  double mu = 1.5;
  double baumgarte_beta = 120.0;  // 1/s, 0.2 / dt at the 600 Hz substep
  double penetration_slop = 5e-4;
  int solver_iterations = 10;
  double restitution = 0.0;
  double restitution_threshold = 0.1;  // m/s, approach speed below which e = 0
};

struct RigidBody {
  double mass = 0.0;
  double inertia = 0.0;  // about the COM
  double inv_mass = 0.0;
  double inv_inertia = 0.0;
  bool kinematic = false;  // never integrated; infinite mass to the solver
  Pose2 pose;              // body frame origin (not necessarily the COM)
  Vec2 local_com;
  Vec2 lin_vel;            // of the COM
  double ang_vel = 0.0;
  std::vector<CollisionPart> parts;

  Vec2 world_com() const { return pose.transform(local_com); }
  Vec2 velocity_at(const Vec2& world_point) const {
    Vec2 r = world_point - world_com();
    return lin_vel + Vec2{-ang_vel * r.y, ang_vel * r.x};
  }
  void finalize_mass(double mass_, double inertia_);
};

// Revolute joint between two body indices, solved as a 2D point constraint
// plus an angular limit.
struct RevoluteJoint {
  int body_parent = -1;
  int body_child = -1;
  Vec2 parent_anchor;  // in the parent body frame
  Vec2 child_anchor;   // in the child body frame
  double rest_angle = 0.0;
  double lo = -2.5;
  double hi = 2.5;
};

// Stable-PD setpoints for one hand: a root pose plus one angle per joint.
struct PdTargets {
  Pose2 root;
  std::vector<double> q;
};

// A spawned hand: mapping from HandModel links/joints to world bodies plus
// cached effective inertias for the stable-PD controller.
struct HandInstance {
  HandModel model;
  std::vector<int> link_bodies;    // body index per link, palm first
  std::vector<int> joint_indices;  // world joint index per model joint
  std::vector<double> joint_eff_inertia;  // child link about its pivot
  double root_eff_mass = 0.0;
  double root_eff_inertia = 0.0;
  std::vector<double> contact_impulse;  // per link, accumulated over substeps
  bool pd_active = false;
  PdTargets pd_targets;
};

struct SimWorld {
  double dt = 1.0 / 600.0;  // substep
  int substeps_per_control = 20;  // 600 Hz sim, 30 Hz control
  Vec2 gravity{0.0, -9.81};
  ContactParams contact;
  bool self_collision = false;
  bool diverged = false;

  std::vector<RigidBody> bodies;
  std::vector<RevoluteJoint> joints;
  std::vector<HandInstance> hands;
  int object_body = -1;

  std::vector<Vec2> external_force;    // per body, persistent until cleared
  std::vector<double> external_torque;
  std::vector<ContactPoint> contacts;  // from the most recent substep

  double control_dt() const { return dt * substeps_per_control; }
};

int add_body(SimWorld& world, RigidBody body);

// Static ground box spanning [-half_w, half_w] x [top - thickness, top].
int add_static_box(SimWorld& world, double half_w, double top, double thickness = 0.1);

// Dynamic body from a convex decomposition (parts in body frame).
int add_decomposed_body(SimWorld& world, const ConvexDecomposition& decomp,
                        const Pose2& pose);

double capsule_mass(const CapsuleShape& cap, double density);
double capsule_inertia(const CapsuleShape& cap, double density);  // about the COM

// Instantiates all links and joints of a hand at the given state.
int spawn_hand(SimWorld& world, const HandModel& model, const JointState& state);

JointState get_hand_state(const SimWorld& world, int hand_index);

// Teleports the hand to a state (used at episode reset and for kinematic
// playback frames).
void set_hand_state(SimWorld& world, int hand_index, const JointState& state);

void set_hand_kinematic(SimWorld& world, int hand_index, bool kinematic);

// Kinematic drive for one substep: place at `now`, velocities toward `next`.
void drive_hand_kinematic(SimWorld& world, int hand_index, const JointState& now,
                          const JointState& next, double dt);

// Arms the hand's stable-PD motors. While active, every step() solves the
// PD law implicitly inside the constraint solver (soft motor rows), which
// stays bounded at stiff gains regardless of the articulated inertia.
void set_hand_pd_targets(SimWorld& world, int hand_index, const PdTargets& targets);

void clear_hand_pd_targets(SimWorld& world, int hand_index);

// Advances the world by one substep. `actuation` holds, per hand,
// [root fx, root fy, root torque, joint torques...]; pass {} for a passive
// step. Sets world.diverged instead of throwing when the state leaves the
// finite range.
void step(SimWorld& world, const std::vector<double>& actuation);

// Per-link contact force magnitudes (N) for one hand, averaged over the
// substeps accumulated since the last reset. Links whose 10%-inflated
// sensor capsule touches nothing read zero.
std::vector<double> read_contact_sensors(const SimWorld& world, int hand_index);

void reset_contact_sensors(SimWorld& world);

}  // namespace manip

#endif  // MANIP_PHYSICS_WORLD_HPP_
