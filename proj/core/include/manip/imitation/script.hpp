#ifndef MANIP_IMITATION_SCRIPT_HPP_
#define MANIP_IMITATION_SCRIPT_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "manip/imitation/clip.hpp"
#include "manip/imitation/scene.hpp"

namespace manip {

struct ScriptError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PoseKey {
  double time = 0.0;
  Pose2 pose;
};

struct ValueKey {
  double time = 0.0;
  double value = 0.0;
};

// Additive sinusoid on top of a joint's keyframed trajectory.
struct JointWave {
  double amplitude = 0.0;
  double frequency = 0.0;  // Hz
  double phase = 0.0;
};

// Keyframed motion of one hand: root pose path plus per-joint angle tracks.
struct HandScript {
  std::vector<PoseKey> root;
  std::vector<std::vector<ValueKey>> joints;  // one track per joint
  std::vector<JointWave> waves;               // one per joint (may be empty)

  Pose2 root_at(double time) const;
  double joint_at(int joint, double time) const;
  JointState state_at(double time) const;
};

// A scripted motion plus the intended object path it should produce.
struct ScriptSpec {
  double duration = 4.0;
  double d_thr = 0.015;      // max object position deviation from intent, m
  double angle_thr = 0.4;    // max object angle deviation from intent, rad
  std::vector<HandScript> hands;
  std::vector<PoseKey> object;  // intended object path

  Pose2 object_at(double time) const;
  void validate(const SceneTemplate& scene) const;
};

ScriptSpec load_script(const std::string& path);
void save_script(const ScriptSpec& spec, const std::string& path);

// Plays the script with kinematic hands and the object dynamic, recording the
// simulated poses at the clip frame rate. Throws ScriptError with the failing
// time if the object strays beyond the spec thresholds.
ReferenceClip generate_reference(const ScriptSpec& script,
                                 const SceneTemplate& scene,
                                 double frame_rate = 120.0);

// A two-finger pinch around a box of the given half extent, gravity off.
// `squeeze` is how far each fingertip presses past light touch.
SceneTemplate make_pinch_scene(const ConvexDecomposition& object,
                               double object_half_extent,
                               double squeeze = 1e-3);

// Grip joint state matching make_pinch_scene for the default two-finger hand.
JointState pinch_grip_state(const HandModel& hand, double object_half_extent,
                            double squeeze = 1e-3);

// Static 4 s grasp: hold the pinch, object stays put.
ScriptSpec make_hold_script(const SceneTemplate& scene, double duration = 4.0);

// Rotate the grasped object in place by `angle` by orbiting the hand root
// about the object's center between settle-in and settle-out phases.
ScriptSpec make_rotate_script(const SceneTemplate& scene,
                              double angle = M_PI / 2.0,
                              double duration = 4.0);

}  // namespace manip

#endif  // MANIP_IMITATION_SCRIPT_HPP_
