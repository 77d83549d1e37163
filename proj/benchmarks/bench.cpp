#include <benchmark/benchmark.h>

#include <memory>

#include "manip/imitation/env.hpp"
#include "manip/learner/mlp.hpp"
#include "manip/imitation/script.hpp"
#include "manip/morphology/decompose.hpp"
#include "manip/morphology/morph.hpp"
#include "manip/physics/world.hpp"
#include "manip/rng.hpp"

namespace {

using namespace manip;

SceneTemplate bench_scene() {
  Mesh2 square = make_box(0.04, 0.04, "square");
  return make_pinch_scene(convex_decompose(square, 600.0), 0.04, 2e-3);
}

const SceneTemplate& shared_scene() {
  static SceneTemplate scene = bench_scene();
  return scene;
}

const ReferenceClip& shared_clip() {
  static ReferenceClip clip =
      generate_reference(make_rotate_script(shared_scene()), shared_scene());
  return clip;
}

void BM_PhysicsSubstep(benchmark::State& state) {
  SimWorld world = shared_scene().instantiate();
  PdTargets targets;
  targets.root = world.hands[0].model.joints.empty()
                     ? Pose2()
                     : get_hand_state(world, 0).root_pose;
  targets.q = get_hand_state(world, 0).q;
  set_hand_pd_targets(world, 0, targets);
  for (auto _ : state) {
    step(world, {});
    benchmark::DoNotOptimize(world.bodies[world.object_body].pose.p.x);
  }
}
BENCHMARK(BM_PhysicsSubstep);

void BM_Narrowphase(benchmark::State& state) {
  SimWorld world = shared_scene().instantiate();
  const RigidBody& obj = world.bodies[world.object_body];
  const RigidBody& palm = world.bodies[world.hands[0].link_bodies[0]];
  for (auto _ : state) {
    auto contacts =
        detect_contacts(palm.parts, palm.pose, obj.parts, obj.pose);
    benchmark::DoNotOptimize(contacts.size());
  }
}
BENCHMARK(BM_Narrowphase);

void BM_EnvControlStep(benchmark::State& state) {
  ManipulationEnv env(shared_scene(), shared_clip());
  env.reset(1);
  std::vector<double> zeros(env.action_dim(), 0.0);
  int t = 0;
  for (auto _ : state) {
    StepResult r = env.step(zeros);
    if (r.done || ++t >= env.horizon()) {
      state.PauseTiming();
      env.reset(1);
      t = 0;
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(r.reward);
  }
}
BENCHMARK(BM_EnvControlStep);

void BM_MlpForward(benchmark::State& state) {
  Rng rng(1);
  Mlp net(71, {64, 64}, 9);
  net.init(rng);
  std::vector<double> x(71);
  for (double& v : x) v = rng.normal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(net.forward(x));
  }
}
BENCHMARK(BM_MlpForward);

void BM_MlpBackward(benchmark::State& state) {
  Rng rng(1);
  Mlp net(71, {64, 64}, 9);
  net.init(rng);
  std::vector<double> x(71);
  for (double& v : x) v = rng.normal();
  std::vector<double> dout(9, 1.0);
  std::vector<double> grad(net.param_count(), 0.0);
  Mlp::Tape tape;
  for (auto _ : state) {
    net.forward(x, tape);
    net.backward(tape, dout, grad);
    benchmark::DoNotOptimize(grad[0]);
  }
}
BENCHMARK(BM_MlpBackward);

void BM_ConvexDecompose(benchmark::State& state) {
  Mesh2 star = make_star(7, 0.05, 0.02, "star7");
  for (auto _ : state) {
    ConvexDecomposition d = convex_decompose(star, 600.0);
    benchmark::DoNotOptimize(d.parts.size());
  }
}
BENCHMARK(BM_ConvexDecompose);

void BM_Morph(benchmark::State& state) {
  Mesh2 square = make_box(0.04, 0.04, "square");
  Mesh2 star = make_star(5, 0.05, 0.02, "star");
  double t = 0.0;
  for (auto _ : state) {
    t = t >= 0.99 ? 0.0 : t + 0.01;
    benchmark::DoNotOptimize(morph(square, star, t).vertices.size());
  }
}
BENCHMARK(BM_Morph);

}  // namespace

BENCHMARK_MAIN();
