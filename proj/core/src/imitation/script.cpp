#include "manip/imitation/script.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace manip {

namespace {

Pose2 sample_pose_track(const std::vector<PoseKey>& keys, double time) {
  if (keys.empty()) return Pose2();
  if (time <= keys.front().time) return keys.front().pose;
  if (time >= keys.back().time) return keys.back().pose;
  for (size_t i = 1; i < keys.size(); ++i) {
    if (time <= keys[i].time) {
      const PoseKey& a = keys[i - 1];
      const PoseKey& b = keys[i];
      double span = b.time - a.time;
      double u = span > 0.0 ? (time - a.time) / span : 1.0;
      Vec2 p = a.pose.p + (b.pose.p - a.pose.p) * u;
      double ang = wrap_angle(a.pose.angle + wrap_angle(b.pose.angle - a.pose.angle) * u);
      return Pose2(p, ang);
    }
  }
  return keys.back().pose;
}

double sample_value_track(const std::vector<ValueKey>& keys, double time) {
  if (keys.empty()) return 0.0;
  if (time <= keys.front().time) return keys.front().value;
  if (time >= keys.back().time) return keys.back().value;
  for (size_t i = 1; i < keys.size(); ++i) {
    if (time <= keys[i].time) {
      const ValueKey& a = keys[i - 1];
      const ValueKey& b = keys[i];
      double span = b.time - a.time;
      double u = span > 0.0 ? (time - a.time) / span : 1.0;
      return a.value + (b.value - a.value) * u;
    }
  }
  return keys.back().value;
}

void check_sorted(const std::vector<double>& times, const char* what) {
  for (size_t i = 1; i < times.size(); ++i) {
    if (times[i] < times[i - 1]) {
      throw ScriptError(std::string(what) + " keyframes out of order");
    }
  }
}

}  // namespace

Pose2 HandScript::root_at(double time) const {
  return sample_pose_track(root, time);
}

double HandScript::joint_at(int joint, double time) const {
  double v = sample_value_track(joints[joint], time);
  if (joint < static_cast<int>(waves.size())) {
    const JointWave& w = waves[joint];
    if (w.amplitude != 0.0) {
      v += w.amplitude * std::sin(2.0 * M_PI * w.frequency * time + w.phase);
    }
  }
  return v;
}

JointState HandScript::state_at(double time) const {
  JointState s;
  s.root_pose = root_at(time);
  s.q.resize(joints.size());
  s.qdot.assign(joints.size(), 0.0);
  for (size_t j = 0; j < joints.size(); ++j) {
    s.q[j] = joint_at(static_cast<int>(j), time);
  }
  return s;
}

Pose2 ScriptSpec::object_at(double time) const {
  return sample_pose_track(object, time);
}

void ScriptSpec::validate(const SceneTemplate& scene) const {
  if (duration <= 0.0) throw ScriptError("script duration must be positive");
  if (hands.size() != scene.hands.size()) {
    throw ScriptError("script hand count does not match the scene");
  }
  if (object.empty()) throw ScriptError("script has no object intent track");
  for (size_t h = 0; h < hands.size(); ++h) {
    const HandScript& hs = hands[h];
    if (hs.root.empty()) throw ScriptError("hand script has no root track");
    if (static_cast<int>(hs.joints.size()) != scene.hands[h].joint_count()) {
      throw ScriptError("hand script joint track count does not match the model");
    }
    std::vector<double> times;
    for (const PoseKey& k : hs.root) times.push_back(k.time);
    check_sorted(times, "root");
    for (const auto& track : hs.joints) {
      times.clear();
      for (const ValueKey& k : track) times.push_back(k.time);
      check_sorted(times, "joint");
    }
  }
}

ReferenceClip generate_reference(const ScriptSpec& script,
                                 const SceneTemplate& scene,
                                 double frame_rate) {
  script.validate(scene);
  SimWorld world = scene.instantiate();
  for (size_t h = 0; h < scene.hands.size(); ++h) {
    set_hand_kinematic(world, static_cast<int>(h), true);
  }

  ReferenceClip clip;
  clip.frame_rate = frame_rate;
  clip.num_hands = static_cast<int>(scene.hands.size());
  clip.joints_per_hand = scene.hands.empty() ? 0 : scene.hands[0].joint_count();

  int frames = static_cast<int>(std::floor(script.duration * frame_rate + 0.5));
  int substeps = static_cast<int>(scene.substep_rate / frame_rate + 0.5);
  double dt = world.dt;

  for (int k = 0; k < frames; ++k) {
    ReferenceClip::Frame f;
    for (int h = 0; h < clip.num_hands; ++h) {
      JointState s = get_hand_state(world, h);
      f.roots.push_back(s.root_pose);
      f.q.insert(f.q.end(), s.q.begin(), s.q.end());
    }
    const Pose2& obj = world.bodies[world.object_body].pose;
    f.object = obj;
    clip.frames.push_back(std::move(f));

    double t_frame = k / frame_rate;
    Pose2 intent = script.object_at(t_frame);
    double dev = (obj.p - intent.p).length();
    double adev = std::fabs(angle_diff(obj.angle, intent.angle));
    if (dev > script.d_thr || adev > script.angle_thr) {
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "script infeasible at t=%.3f s (pos dev %.4f m, angle dev %.3f rad)",
                    t_frame, dev, adev);
      throw ScriptError(buf);
    }

    for (int s = 0; s < substeps; ++s) {
      double t0 = t_frame + s * dt;
      for (int h = 0; h < clip.num_hands; ++h) {
        drive_hand_kinematic(world, h, script.hands[h].state_at(t0),
                             script.hands[h].state_at(t0 + dt), dt);
      }
      step(world, {});
      if (world.diverged) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "script infeasible at t=%.3f s (diverged)",
                      t0);
        throw ScriptError(buf);
      }
    }
  }
  clip.validate();
  return clip;
}

JointState pinch_grip_state(const HandModel& hand, double object_half_extent,
                            double squeeze) {
  if (hand.chains.size() != 2) {
    throw ScriptError("pinch grip needs a two-finger hand");
  }
  JointState s;
  s.root_pose = Pose2();
  s.q.assign(hand.joint_count(), 0.0);
  s.qdot.assign(hand.joint_count(), 0.0);

  for (const auto& chain : hand.chains) {
    if (chain.size() != 3) throw ScriptError("pinch grip needs 3-link fingers");
    // Joint index for each link in the chain.
    std::vector<int> jidx;
    for (int link : chain) {
      for (int j = 0; j < hand.joint_count(); ++j) {
        if (hand.joints[j].child_link == link) jidx.push_back(j);
      }
    }
    double L1 = hand.links[chain[0] - 1].length;
    double L3 = hand.links[chain[2] - 1].length;
    double r = hand.links[chain[2] - 1].radius;
    Vec2 base = hand.joints[jidx[0]].parent_anchor;  // palm frame = root frame
    double side = base.x < 0.0 ? -1.0 : 1.0;

    // Distal link vertical, its surface pressed `squeeze` into the object
    // side, centered on the object height.
    double cx = side * (object_half_extent + r - squeeze);
    double wy = 0.12 - L3 * 0.5;
    Vec2 w{cx, wy};
    Vec2 v = w - base;
    double d = v.length();
    if (d > L1 + L1) throw ScriptError("pinch grip out of reach");
    double phi = std::atan2(v.y, v.x);
    double alpha = std::acos(clamp(d / (2.0 * L1), -1.0, 1.0));
    double a1 = phi - side * alpha;  // elbow bends outward
    double a2 = phi + side * alpha;
    double a3 = M_PI / 2.0;
    s.q[jidx[0]] = wrap_angle(a1 - hand.joints[jidx[0]].rest_angle);
    s.q[jidx[1]] = wrap_angle(a2 - a1 - hand.joints[jidx[1]].rest_angle);
    s.q[jidx[2]] = wrap_angle(a3 - a2 - hand.joints[jidx[2]].rest_angle);
  }
  return s;
}

SceneTemplate make_pinch_scene(const ConvexDecomposition& object,
                               double object_half_extent, double squeeze) {
  SceneTemplate scene;
  scene.gravity = {0.0, 0.0};
  scene.hands.push_back(make_two_finger_hand());
  scene.hand_init.push_back(
      pinch_grip_state(scene.hands[0], object_half_extent, squeeze));
  scene.object = object;
  scene.object_pose = Pose2({0.0, 0.12}, 0.0);
  return scene;
}

namespace {

// Hold every joint at the scene's initial grip for the whole script.
HandScript constant_hand_script(const HandModel& model, const JointState& init,
                                double duration) {
  HandScript hs;
  hs.root = {{0.0, init.root_pose}, {duration, init.root_pose}};
  hs.joints.resize(model.joint_count());
  for (int j = 0; j < model.joint_count(); ++j) {
    hs.joints[j] = {{0.0, init.q[j]}, {duration, init.q[j]}};
  }
  return hs;
}

}  // namespace

ScriptSpec make_hold_script(const SceneTemplate& scene, double duration) {
  ScriptSpec spec;
  spec.duration = duration;
  for (size_t h = 0; h < scene.hands.size(); ++h) {
    spec.hands.push_back(
        constant_hand_script(scene.hands[h], scene.hand_init[h], duration));
  }
  spec.object = {{0.0, scene.object_pose}, {duration, scene.object_pose}};
  return spec;
}

ScriptSpec make_rotate_script(const SceneTemplate& scene, double angle,
                              double duration) {
  ScriptSpec spec;
  spec.duration = duration;
  double settle = 0.5;
  double t0 = settle;
  double t1 = duration - settle;
  Vec2 pivot = scene.object_pose.p;

  for (size_t h = 0; h < scene.hands.size(); ++h) {
    HandScript hs =
        constant_hand_script(scene.hands[h], scene.hand_init[h], duration);
    // Root orbits the object center; dense keys keep the chordal error small.
    Pose2 start = scene.hand_init[h].root_pose;
    hs.root.clear();
    hs.root.push_back({0.0, start});
    int arc_keys = std::max(8, static_cast<int>(std::fabs(angle) / 0.1));
    for (int i = 0; i <= arc_keys; ++i) {
      double u = static_cast<double>(i) / arc_keys;
      double th = angle * u;
      Rot2 rot(th);
      Pose2 pose(pivot + rot.rotate(start.p - pivot),
                 wrap_angle(start.angle + th));
      hs.root.push_back({t0 + (t1 - t0) * u, pose});
    }
    hs.root.push_back({duration, hs.root.back().pose});
    spec.hands.push_back(std::move(hs));
  }

  spec.object.push_back({0.0, scene.object_pose});
  spec.object.push_back({t0, scene.object_pose});
  int arc_keys = std::max(8, static_cast<int>(std::fabs(angle) / 0.1));
  for (int i = 1; i <= arc_keys; ++i) {
    double u = static_cast<double>(i) / arc_keys;
    spec.object.push_back(
        {t0 + (t1 - t0) * u,
         Pose2(scene.object_pose.p,
               wrap_angle(scene.object_pose.angle + angle * u))});
  }
  spec.object.push_back({duration, spec.object.back().pose});
  return spec;
}

ScriptSpec load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScriptError("cannot open script file: " + path);
  ScriptSpec spec;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ScriptError(path + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "duration") {
      ls >> spec.duration;
    } else if (tag == "dthr") {
      ls >> spec.d_thr;
    } else if (tag == "athr") {
      ls >> spec.angle_thr;
    } else if (tag == "hands") {
      size_t n;
      ls >> n;
      spec.hands.resize(n);
    } else if (tag == "joints") {
      size_t h, n;
      if (!(ls >> h >> n) || h >= spec.hands.size()) fail("bad joints line");
      spec.hands[h].joints.resize(n);
      spec.hands[h].waves.resize(n);
    } else if (tag == "root") {
      size_t h;
      double t, x, y, a;
      if (!(ls >> h >> t >> x >> y >> a) || h >= spec.hands.size()) {
        fail("bad root line");
      }
      spec.hands[h].root.push_back({t, Pose2({x, y}, a)});
    } else if (tag == "key") {
      size_t h, j;
      double t, v;
      if (!(ls >> h >> j >> t >> v) || h >= spec.hands.size() ||
          j >= spec.hands[h].joints.size()) {
        fail("bad key line");
      }
      spec.hands[h].joints[j].push_back({t, v});
    } else if (tag == "wave") {
      size_t h, j;
      double amp, freq, phase;
      if (!(ls >> h >> j >> amp >> freq >> phase) || h >= spec.hands.size() ||
          j >= spec.hands[h].waves.size()) {
        fail("bad wave line");
      }
      spec.hands[h].waves[j] = {amp, freq, phase};
    } else if (tag == "object") {
      double t, x, y, a;
      if (!(ls >> t >> x >> y >> a)) fail("bad object line");
      spec.object.push_back({t, Pose2({x, y}, a)});
    } else {
      fail("unknown tag '" + tag + "'");
    }
  }
  return spec;
}

void save_script(const ScriptSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ScriptError("cannot write script file: " + path);
  char buf[192];
  auto line = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof(buf), fmt, args...);
    out << buf << "\n";
  };
  line("duration %.17g", spec.duration);
  line("dthr %.17g", spec.d_thr);
  line("athr %.17g", spec.angle_thr);
  line("hands %zu", spec.hands.size());
  for (size_t h = 0; h < spec.hands.size(); ++h) {
    const HandScript& hs = spec.hands[h];
    line("joints %zu %zu", h, hs.joints.size());
    for (const PoseKey& k : hs.root) {
      line("root %zu %.17g %.17g %.17g %.17g", h, k.time, k.pose.p.x,
           k.pose.p.y, k.pose.angle);
    }
    for (size_t j = 0; j < hs.joints.size(); ++j) {
      for (const ValueKey& k : hs.joints[j]) {
        line("key %zu %zu %.17g %.17g", h, j, k.time, k.value);
      }
      if (j < hs.waves.size() && hs.waves[j].amplitude != 0.0) {
        line("wave %zu %zu %.17g %.17g %.17g", h, j, hs.waves[j].amplitude,
             hs.waves[j].frequency, hs.waves[j].phase);
      }
    }
  }
  for (const PoseKey& k : spec.object) {
    line("object %.17g %.17g %.17g %.17g", k.time, k.pose.p.x, k.pose.p.y,
         k.pose.angle);
  }
}

}  // namespace manip
