#include "manip/harness/scene.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "manip/imitation/script.hpp"
#include "manip/morphology/decompose.hpp"

namespace manip {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

double mesh_half_extent(const Mesh2& mesh) {
  double m = 0.0;
  for (const Vec2& v : mesh.vertices) m = std::max(m, std::fabs(v.x));
  return m;
}

}  // namespace

Mesh2 resolve_mesh(const std::string& spec, const std::string& base_dir) {
  std::vector<std::string> parts = split(spec, ':');
  const std::string& kind = parts[0];
  auto need = [&](size_t n) {
    if (parts.size() != n + 1) {
      throw ConfigError("mesh spec '" + spec + "' needs " + std::to_string(n) +
                        " arguments");
    }
  };
  try {
    if (kind == "box") {
      need(2);
      return make_box(std::stod(parts[1]), std::stod(parts[2]));
    }
    if (kind == "ngon") {
      need(2);
      return make_ngon(std::stoi(parts[1]), std::stod(parts[2]));
    }
    if (kind == "star") {
      need(3);
      return make_star(std::stoi(parts[1]), std::stod(parts[2]),
                       std::stod(parts[3]));
    }
    if (kind == "lshape") {
      need(1);
      return make_lshape(std::stod(parts[1]));
    }
  } catch (const std::invalid_argument&) {
    throw ConfigError("bad number in mesh spec '" + spec + "'");
  }
  if (spec.find(':') != std::string::npos) {
    throw ConfigError("unknown builtin mesh kind '" + kind + "' in '" + spec + "'");
  }
  std::filesystem::path p(spec);
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  return load_mesh(p.string());
}

SceneTemplate load_scene(const IniConfig& cfg, const std::string& base_dir) {
  SceneTemplate scene;
  scene.substep_rate = cfg.get_double("scene", "substep_rate", 600.0);
  scene.control_rate = cfg.get_double("scene", "control_rate", 30.0);
  if (cfg.has("scene", "gravity")) {
    std::vector<double> g = cfg.get_list("scene", "gravity");
    if (g.size() != 2) throw ConfigError("gravity needs two components");
    scene.gravity = {g[0], g[1]};
  }
  scene.self_collision = cfg.get_bool("scene", "self_collision", false);

  scene.contact.mu = cfg.get_double("contact", "mu", scene.contact.mu);
  scene.contact.baumgarte_beta =
      cfg.get_double("contact", "baumgarte_beta", scene.contact.baumgarte_beta);
  scene.contact.penetration_slop = cfg.get_double(
      "contact", "penetration_slop", scene.contact.penetration_slop);
  scene.contact.solver_iterations = cfg.get_int(
      "contact", "solver_iterations", scene.contact.solver_iterations);
  scene.contact.restitution =
      cfg.get_double("contact", "restitution", scene.contact.restitution);
  scene.contact.restitution_threshold =
      cfg.get_double("contact", "restitution_threshold",
                     scene.contact.restitution_threshold);

  TwoFingerHandParams hp;
  if (cfg.has("hand", "palm")) {
    std::vector<double> p = cfg.get_list("hand", "palm");
    if (p.size() != 5) throw ConfigError("palm needs ax ay bx by radius");
    hp.palm_a = {p[0], p[1]};
    hp.palm_b = {p[2], p[3]};
    hp.palm_radius = p[4];
  }
  hp.links_per_finger = cfg.get_int("hand", "links_per_finger", hp.links_per_finger);
  hp.link_length = cfg.get_double("hand", "link_length", hp.link_length);
  hp.link_radius = cfg.get_double("hand", "link_radius", hp.link_radius);
  hp.density = cfg.get_double("hand", "density", hp.density);
  hp.joint_kp = cfg.get_double("hand", "joint_kp", hp.joint_kp);
  hp.joint_limit = cfg.get_double("hand", "joint_limit", hp.joint_limit);
  hp.left_base_angle = cfg.get_double("hand", "left_base_angle", hp.left_base_angle);
  hp.right_base_angle =
      cfg.get_double("hand", "right_base_angle", hp.right_base_angle);
  HandModel hand = make_two_finger_hand(hp);
  hand.root_linear.kp = cfg.get_double("hand", "root_linear_kp", hand.root_linear.kp);
  hand.root_angular.kp =
      cfg.get_double("hand", "root_angular_kp", hand.root_angular.kp);

  Mesh2 mesh = resolve_mesh(cfg.get_str("object", "mesh", "box:0.04:0.04"),
                            base_dir);
  double density = cfg.get_double("object", "density", 600.0);
  scene.object = convex_decompose(mesh, density);
  if (cfg.has("object", "pose")) {
    std::vector<double> p = cfg.get_list("object", "pose");
    if (p.size() != 3) throw ConfigError("object pose needs x y angle");
    scene.object_pose = Pose2({p[0], p[1]}, p[2]);
  } else {
    scene.object_pose = Pose2({0.0, 0.12}, 0.0);
  }

  int num_hands = cfg.get_int("scene", "hands", 1);
  double squeeze = cfg.get_double("hand", "grip_squeeze", 1e-3);
  double half = cfg.get_double("hand", "grip_half_extent", mesh_half_extent(mesh));
  std::string init = cfg.get_str("hand", "init", "grip");
  for (int h = 0; h < num_hands; ++h) {
    scene.hands.push_back(hand);
    if (init == "grip") {
      scene.hand_init.push_back(pinch_grip_state(hand, half, squeeze));
    } else if (init == "zero") {
      JointState s;
      s.q.assign(hand.joint_count(), 0.0);
      s.qdot.assign(hand.joint_count(), 0.0);
      scene.hand_init.push_back(s);
    } else {
      throw ConfigError("unknown hand init '" + init + "'");
    }
  }
  return scene;
}

SceneTemplate load_scene_file(const std::string& path) {
  IniConfig cfg = IniConfig::load(path);
  return load_scene(cfg, std::filesystem::path(path).parent_path().string());
}

void set_scene_object(SceneTemplate& scene, const Mesh2& mesh, double density,
                      double grip_squeeze) {
  scene.object = convex_decompose(mesh, density);
  double half = mesh_half_extent(mesh);
  for (size_t h = 0; h < scene.hands.size(); ++h) {
    scene.hand_init[h] = pinch_grip_state(scene.hands[h], half, grip_squeeze);
  }
}

}  // namespace manip
