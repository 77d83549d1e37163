#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "manip/curriculum/goodness.hpp"
#include "manip/imitation/env.hpp"
#include "manip/imitation/observation.hpp"
#include "manip/imitation/reward.hpp"
#include "manip/imitation/script.hpp"
#include "manip/learner/rollout.hpp"
#include "manip/morphology/decompose.hpp"

using namespace manip;

namespace {

SceneTemplate square_scene(double squeeze = 2e-3) {
  Mesh2 square = make_box(0.04, 0.04, "square");
  return make_pinch_scene(convex_decompose(square, 600.0), 0.04, squeeze);
}

// A world placed exactly on a clip frame, for observation/reward oracles.
SimWorld world_on_frame(const SceneTemplate& scene, const ReferenceClip& clip,
                        int step_index, double control_rate) {
  SimWorld world = scene.instantiate();
  ReferenceClip::Frame f = clip.sample_step(step_index, control_rate);
  for (size_t h = 0; h < world.hands.size(); ++h) {
    JointState s;
    s.root_pose = f.roots[h];
    int J = world.hands[h].model.joint_count();
    s.q.assign(f.q.begin() + h * J, f.q.begin() + (h + 1) * J);
    s.qdot.assign(J, 0.0);
    set_hand_state(world, static_cast<int>(h), s);
  }
  RigidBody& obj = world.bodies[world.object_body];
  obj.pose = f.object;
  obj.lin_vel = {0, 0};
  obj.ang_vel = 0;
  return world;
}

}  // namespace

TEST_SUITE("imitation") {

TEST_CASE("clip arithmetic and interpolation") {
  ReferenceClip clip;
  clip.frame_rate = 120.0;
  clip.joints_per_hand = 1;
  ReferenceClip::Frame f0{{Pose2(0, 0, 0)}, {0.0}, Pose2(0, 0, 0)};
  ReferenceClip::Frame f1{{Pose2(1, 0, 1)}, {0.5}, Pose2(0, 1, -1)};
  clip.frames = {f0, f1};
  // Midpoint of the two frames in time.
  ReferenceClip::Frame mid = clip.sample(0.5 / 120.0);
  CHECK(mid.roots[0].p.x == doctest::Approx(0.5));
  CHECK(mid.roots[0].angle == doctest::Approx(0.5));
  CHECK(mid.q[0] == doctest::Approx(0.25));
  CHECK(mid.object.p.y == doctest::Approx(0.5));
  CHECK(mid.object.angle == doctest::Approx(-0.5));
  // Sampling past the end clamps to the last frame.
  CHECK(clip.sample(1.0).object.p.y == doctest::Approx(1.0));

  // 4 s at 120 Hz -> 480 frames -> 120 control steps at 30 Hz.
  ReferenceClip long_clip = clip;
  long_clip.frames.assign(480, f0);
  CHECK(long_clip.control_steps(30.0) == 120);
  CHECK(long_clip.duration() == doctest::Approx(4.0));
}

TEST_CASE("clip interpolation takes the shortest angular path") {
  ReferenceClip clip;
  clip.frame_rate = 120.0;
  clip.joints_per_hand = 1;
  ReferenceClip::Frame a{{Pose2(0, 0, 3.1)}, {3.1}, Pose2(0, 0, 3.1)};
  ReferenceClip::Frame b{{Pose2(0, 0, -3.1)}, {-3.1}, Pose2(0, 0, -3.1)};
  clip.frames = {a, b};
  ReferenceClip::Frame mid = clip.sample(0.5 / 120.0);
  // Halfway across the wrap, not through zero.
  CHECK(std::abs(mid.object.angle) == doctest::Approx(M_PI).epsilon(0.02));
}

TEST_CASE("clip file round trip is exact") {
  namespace fs = std::filesystem;
  SceneTemplate scene = square_scene();
  ReferenceClip clip = generate_reference(make_hold_script(scene, 0.5), scene);
  fs::path path = fs::temp_directory_path() / "manip_clip_roundtrip.clip";
  save_clip(clip, path.string());
  ReferenceClip back = load_clip(path.string());
  REQUIRE(back.frames.size() == clip.frames.size());
  for (size_t i = 0; i < clip.frames.size(); ++i) {
    CHECK(back.frames[i].object.p.x == clip.frames[i].object.p.x);
    CHECK(back.frames[i].object.angle == clip.frames[i].object.angle);
    for (size_t j = 0; j < clip.frames[i].q.size(); ++j) {
      CHECK(back.frames[i].q[j] == clip.frames[i].q[j]);
    }
  }
  fs::remove(path);
}

TEST_CASE("observation layout dimension") {
  ObservationLayout layout;  // H=1, J=6, N=7
  CHECK(layout.dim() == 71);
  ObservationLayout two{2, 6, 14};
  CHECK(two.dim() == 2 * 16 + 2 * 9 + 7 + 2 * 16 + 4 + 2 * 9 + 3 + 14);
}

TEST_CASE("observation differences vanish on the reference") {
  SceneTemplate scene = square_scene();
  ReferenceClip clip = generate_reference(make_hold_script(scene, 1.0), scene);
  SimWorld world = world_on_frame(scene, clip, 0, scene.control_rate);
  ObservationLayout layout{1, 6, 7};
  std::vector<double> contacts(7, 0.0);
  std::vector<double> obs =
      build_observation(world, clip, 0, scene.control_rate, contacts);
  REQUIRE(static_cast<int>(obs.size()) == layout.dim());
  // The two difference blocks sit before the trailing contact block.
  int diff_len = (3 + 6) + 3;
  int start = layout.dim() - 7 - diff_len;
  for (int i = 0; i < diff_len; ++i) {
    CHECK(obs[start + i] == doctest::Approx(0.0).epsilon(1e-9));
  }
  for (int i = 0; i < 7; ++i) CHECK(obs[layout.dim() - 7 + i] == 0.0);
}

TEST_CASE("object angle difference uses reference minus sim, wrapped") {
  SceneTemplate scene = square_scene();
  ReferenceClip clip = generate_reference(make_hold_script(scene, 1.0), scene);
  SimWorld world = world_on_frame(scene, clip, 0, scene.control_rate);
  ObservationLayout layout{1, 6, 7};
  std::vector<double> contacts(7, 0.0);

  // Sim object rotated +0.1 rad past the reference: delta = -0.1.
  RigidBody& obj = world.bodies[world.object_body];
  Pose2 ref_pose = clip.sample_step(0, scene.control_rate).object;
  obj.pose = Pose2(ref_pose.p, ref_pose.angle + 0.1);
  std::vector<double> obs =
      build_observation(world, clip, 0, scene.control_rate, contacts);
  int obj_dtheta = layout.dim() - 7 - 1;
  CHECK(obs[obj_dtheta] == doctest::Approx(-0.1).epsilon(1e-9));

  // Wrap-around: reference 3.1 vs sim -3.1 -> -(2 pi - 6.2).
  ReferenceClip wrapped = clip;
  for (auto& f : wrapped.frames) f.object = Pose2(f.object.p, 3.1);
  obj.pose = Pose2(ref_pose.p, -3.1);
  obs = build_observation(world, wrapped, 0, scene.control_rate, contacts);
  CHECK(obs[obj_dtheta] == doctest::Approx(-(2.0 * M_PI - 6.2)).epsilon(1e-9));
  CHECK(std::abs(obs[obj_dtheta]) < M_PI);
}

TEST_CASE("perfect tracking scores the full 8.2 reward") {
  SceneTemplate scene = square_scene();
  ReferenceClip clip = generate_reference(make_hold_script(scene, 1.0), scene);
  SimWorld world = world_on_frame(scene, clip, 0, scene.control_rate);
  RewardConfig cfg;
  RewardTerms terms = compute_reward(world, clip, 0, scene.control_rate, cfg);
  CHECK(terms.od == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(terms.orr == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(terms.hd == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(terms.hr == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(terms.hj == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(terms.total == doctest::Approx(8.2).epsilon(1e-12));
  CHECK(cfg.max_total() == doctest::Approx(8.2).epsilon(1e-12));
}

TEST_CASE("object offset with k_od d^2 = 1 gives r_od = 1/e") {
  SceneTemplate scene = square_scene();
  ReferenceClip clip = generate_reference(make_hold_script(scene, 1.0), scene);
  SimWorld world = world_on_frame(scene, clip, 0, scene.control_rate);
  RewardConfig cfg;
  double d = std::sqrt(1.0 / cfg.k_od);
  RigidBody& obj = world.bodies[world.object_body];
  obj.pose = Pose2(obj.pose.p + Vec2{d, 0.0}, obj.pose.angle);
  RewardTerms terms = compute_reward(world, clip, 0, scene.control_rate, cfg);
  CHECK(terms.od == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(terms.total ==
        doctest::Approx(4.0 * std::exp(-1.0) + 4.0 + 0.2).epsilon(1e-12));
}

TEST_CASE("reward terms decrease monotonically in their deviations") {
  SceneTemplate scene = square_scene();
  ReferenceClip clip = generate_reference(make_hold_script(scene, 1.0), scene);
  RewardConfig cfg;
  double prev_total = 8.2 + 1e-9;
  for (double d : {0.005, 0.01, 0.02, 0.04}) {
    SimWorld world = world_on_frame(scene, clip, 0, scene.control_rate);
    RigidBody& obj = world.bodies[world.object_body];
    obj.pose = Pose2(obj.pose.p + Vec2{d, -d * 0.5}, obj.pose.angle + 2.0 * d);
    RewardTerms terms = compute_reward(world, clip, 0, scene.control_rate, cfg);
    CHECK(terms.total < prev_total);
    CHECK(terms.total > 0.0);
    prev_total = terms.total;
  }
}

TEST_CASE("termination thresholds") {
  TerminationThresholds thr;
  Pose2 ref(0, 0, 0);
  CHECK(!check_termination(Pose2(0.09, 0, 0), ref, thr));
  CHECK(check_termination(Pose2(0.11, 0, 0), ref, thr));
  CHECK(!check_termination(Pose2(0, 0, 59.0 * M_PI / 180.0), ref, thr));
  CHECK(check_termination(Pose2(0, 0, 61.0 * M_PI / 180.0), ref, thr));
  // Wrapped: 359 degrees is one degree away, not 359.
  CHECK(!check_termination(Pose2(0, 0, -1.0 * M_PI / 180.0), ref, thr));
}

TEST_CASE("action filter arithmetic and convergence") {
  ActionFilterState filter;
  filter.previous.assign(3, 0.0);
  std::vector<double> a{0.05, -0.02, 0.3};
  std::vector<double> f1 = filter.apply(a);
  CHECK(f1[0] == doctest::Approx(0.015).epsilon(1e-15));
  CHECK(f1[1] == doctest::Approx(-0.006).epsilon(1e-15));
  // Repeated constant input converges geometrically to the input.
  for (int n = 0; n < 40; ++n) filter.apply(a);
  std::vector<double> fn = filter.apply(a);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(fn[i] - a[i]) <= std::pow(0.7, 40) * std::abs(a[i]) + 1e-12);
  }
}

TEST_CASE("zero action targets reproduce the reference") {
  SceneTemplate scene = square_scene();
  ReferenceClip clip = generate_reference(make_hold_script(scene, 1.0), scene);
  std::vector<double> zeros(9, 0.0);
  double t = 0.4;
  std::vector<PdTargets> targets =
      action_to_targets(zeros, clip, t, scene.hands);
  REQUIRE(targets.size() == 1);
  ReferenceClip::Frame ref = clip.sample(t);
  CHECK(targets[0].root.p.x == doctest::Approx(ref.roots[0].p.x).epsilon(1e-12));
  CHECK(targets[0].root.angle == doctest::Approx(ref.roots[0].angle).epsilon(1e-12));
  for (int j = 0; j < 6; ++j) {
    CHECK(targets[0].q[j] == doctest::Approx(ref.q[j]).epsilon(1e-12));
  }
}

TEST_CASE("joint delta targets are clamped to the joint limits") {
  SceneTemplate scene = square_scene();
  ReferenceClip clip = generate_reference(make_hold_script(scene, 1.0), scene);
  std::vector<double> delta(9, 0.0);
  delta[3] = 10.0;  // far beyond any joint limit
  std::vector<PdTargets> targets =
      action_to_targets(delta, clip, 0.0, scene.hands);
  CHECK(targets[0].q[0] == doctest::Approx(scene.hands[0].joints[0].hi));
}

TEST_CASE("hold script yields a near-static feasible clip") {
  SceneTemplate scene = square_scene();
  ReferenceClip clip = generate_reference(make_hold_script(scene), scene);
  CHECK(clip.frames.size() == 480);
  // The grip settles in the first fraction of a second; afterwards the
  // object must stay put to sub-millimetre precision.
  Vec2 first = clip.frames.front().object.p;
  Vec2 settled = clip.frames[60].object.p;
  double settle_disp = 0.0, hold_disp = 0.0;
  for (size_t i = 0; i < clip.frames.size(); ++i) {
    double d = (clip.frames[i].object.p - first).length();
    settle_disp = std::max(settle_disp, d);
    if (i >= 60) {
      hold_disp = std::max(hold_disp, (clip.frames[i].object.p - settled).length());
    }
  }
  CHECK(settle_disp < 5e-3);
  CHECK(hold_disp < 1e-3);
}

TEST_CASE("rotate script turns the object by ninety degrees") {
  SceneTemplate scene = square_scene();
  ReferenceClip clip = generate_reference(make_rotate_script(scene), scene);
  CHECK(clip.frames.size() == 480);
  double turned = angle_diff(clip.frames.back().object.angle,
                             clip.frames.front().object.angle);
  CHECK(std::abs(turned - M_PI / 2.0) <= 5.0 * M_PI / 180.0);
}

TEST_CASE("infeasible scripts are rejected with the failing time") {
  SceneTemplate scene = square_scene();
  // Demand the object slide 20 cm sideways while the hand holds still.
  ScriptSpec script = make_hold_script(scene, 1.0);
  Pose2 start = script.object.front().pose;
  script.object = {{0.0, start},
                   {1.0, Pose2(start.p + Vec2{0.2, 0.0}, start.angle)}};
  CHECK_THROWS_AS(generate_reference(script, scene), ScriptError);
  try {
    generate_reference(script, scene);
  } catch (const ScriptError& e) {
    CHECK(std::string(e.what()).find("infeasible") != std::string::npos);
  }
}

TEST_CASE("script file round trip") {
  namespace fs = std::filesystem;
  SceneTemplate scene = square_scene();
  ScriptSpec script = make_rotate_script(scene);
  fs::path path = fs::temp_directory_path() / "manip_script_roundtrip.script";
  save_script(script, path.string());
  ScriptSpec back = load_script(path.string());
  CHECK(back.duration == script.duration);
  REQUIRE(back.hands.size() == script.hands.size());
  REQUIRE(back.hands[0].root.size() == script.hands[0].root.size());
  for (size_t i = 0; i < script.hands[0].root.size(); ++i) {
    CHECK(back.hands[0].root[i].pose.p.x == script.hands[0].root[i].pose.p.x);
    CHECK(back.hands[0].root[i].pose.angle == script.hands[0].root[i].pose.angle);
  }
  REQUIRE(back.object.size() == script.object.size());
  fs::remove(path);
}

TEST_CASE("zero-action playback completes its own clip") {
  SceneTemplate scene = square_scene();
  ReferenceClip clip = generate_reference(make_rotate_script(scene), scene);
  ManipulationEnv env(scene, clip);
  CHECK(env.obs_dim() == 71);
  CHECK(env.action_dim() == 9);
  CHECK(env.horizon() == 120);
  env.reset(3);
  std::vector<double> zeros(env.action_dim(), 0.0);
  std::vector<double> tracking;
  int steps = 0;
  bool done = false;
  while (!done) {
    StepResult r = env.step(zeros);
    tracking.push_back(r.tracking);
    ++steps;
    done = r.done;
  }
  CHECK(steps == env.horizon());
  CHECK(goodness_score(steps, env.horizon(), tracking) > 0.9);
}

TEST_CASE("losing the object terminates the episode early") {
  SceneTemplate scene = square_scene();
  ReferenceClip clip = generate_reference(make_rotate_script(scene), scene);
  auto play = [&](PerturbationConfig pc) {
    ManipulationEnv env(scene, clip, {}, {}, {}, pc);
    env.reset(3);
    std::vector<double> zeros(env.action_dim(), 0.0);
    int steps = 0;
    bool done = false;
    while (!done && steps < env.horizon()) {
      done = env.step(zeros).done;
      ++steps;
    }
    return std::make_pair(steps, env.horizon());
  };
  // The default perturbation is survivable with zero actions...
  PerturbationConfig gentle;
  gentle.enabled = true;
  auto [gentle_steps, horizon] = play(gentle);
  CHECK(gentle_steps == horizon);
  // ...but a force far beyond the grip strength rips the object out and the
  // termination check must cut the episode.
  PerturbationConfig violent;
  violent.enabled = true;
  violent.force = 150.0;
  violent.duration = 0.5;
  auto [violent_steps, horizon2] = play(violent);
  CHECK(violent_steps < horizon2);
}

TEST_CASE("episodes are reproducible bit-for-bit") {
  SceneTemplate scene = square_scene();
  ReferenceClip clip = generate_reference(make_rotate_script(scene), scene);
  GaussianPolicy policy(71, {16}, 9);
  Rng rng(5);
  policy.net.init(rng);
  RunningNormalizer filter(71);
  auto roll = [&](RolloutMode mode) {
    ManipulationEnv env(scene, clip);
    return run_episode(env, policy, filter, mode, 77);
  };
  for (RolloutMode mode : {RolloutMode::kStochastic, RolloutMode::kDeterministic}) {
    Trajectory a = roll(mode);
    Trajectory b = roll(mode);
    REQUIRE(a.length() == b.length());
    CHECK(a.total_reward() == b.total_reward());
    for (int t = 0; t < a.length(); ++t) {
      CHECK(a.actions[t] == b.actions[t]);
      CHECK(a.rewards[t] == b.rewards[t]);
    }
  }
}

}  // TEST_SUITE
