#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "manip/curriculum/testbed.hpp"
#include "manip/learner/checkpoint.hpp"
#include "manip/learner/gae.hpp"
#include "manip/learner/mlp.hpp"
#include "manip/learner/optimizer.hpp"
#include "manip/learner/ppo.hpp"
#include "manip/learner/rollout.hpp"

using namespace manip;

namespace {

// Independent forward pass straight from the documented parameter layout:
// per layer, row-major weights [out x in] then biases; tanh hidden, linear out.
std::vector<double> oracle_forward(const Mlp& net, std::vector<double> x) {
  std::vector<int> sizes;
  sizes.push_back(net.input_dim());
  for (int h : net.hidden()) sizes.push_back(h);
  sizes.push_back(net.output_dim());
  size_t off = 0;
  for (size_t l = 0; l + 1 < sizes.size(); ++l) {
    int in = sizes[l], out = sizes[l + 1];
    std::vector<double> y(out);
    for (int o = 0; o < out; ++o) {
      double s = 0.0;
      for (int i = 0; i < in; ++i) s += net.params[off + o * in + i] * x[i];
      y[o] = s;
    }
    off += static_cast<size_t>(out) * in;
    for (int o = 0; o < out; ++o) y[o] += net.params[off + o];
    off += out;
    if (l + 2 < sizes.size()) {
      for (double& v : y) v = std::tanh(v);
    }
    x = std::move(y);
  }
  CHECK(off == net.params.size());
  return x;
}

// A bandit "environment": one step, reward = -(a - 0.5)^2, for end-to-end PPO.
class BanditEnv : public Env {
 public:
  int obs_dim() const override { return 1; }
  int action_dim() const override { return 1; }
  int horizon() const override { return 1; }
  std::vector<double> reset(uint64_t) override { return {1.0}; }
  StepResult step(const std::vector<double>& a) override {
    StepResult r;
    r.obs = {1.0};
    double d = a[0] - 0.5;
    r.reward = 1.0 - d * d;
    r.tracking = r.reward;
    r.done = true;
    return r;
  }
};

}  // namespace

TEST_SUITE("learner") {

TEST_CASE("mlp forward matches an independent implementation") {
  Rng rng(11);
  Mlp net(3, {5, 4}, 2);
  net.init(rng, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> x(3);
    for (double& v : x) v = rng.normal();
    std::vector<double> got = net.forward(x);
    std::vector<double> want = oracle_forward(net, x);
    REQUIRE(got.size() == want.size());
    for (size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("mlp with zero parameters outputs zero") {
  Mlp net(4, {3}, 2);
  std::fill(net.params.begin(), net.params.end(), 0.0);
  std::vector<double> y = net.forward({1.0, -2.0, 0.5, 3.0});
  CHECK(y[0] == 0.0);
  CHECK(y[1] == 0.0);
}

TEST_CASE("mlp without hidden layers is affine") {
  Mlp net(2, {}, 1);
  REQUIRE(net.param_count() == 3);
  net.params = {2.0, -1.0, 0.25};  // w00, w01, b0
  std::vector<double> y = net.forward({3.0, 4.0});
  CHECK(y[0] == doctest::Approx(2.0 * 3.0 - 4.0 + 0.25));
}

TEST_CASE("mlp backward matches finite differences") {
  Rng rng(21);
  for (int arch = 0; arch < 3; ++arch) {
    std::vector<std::vector<int>> hiddens{{4}, {4, 3}, {}};
    Mlp net(2, hiddens[arch], 2);
    net.init(rng, 1.0);
    std::vector<double> x{0.3, -0.8};
    std::vector<double> dout{1.0, -0.5};

    Mlp::Tape tape;
    net.forward(x, tape);
    std::vector<double> grad(net.param_count(), 0.0);
    net.backward(tape, dout, grad);

    double h = 1e-6;
    for (int p = 0; p < net.param_count(); ++p) {
      double saved = net.params[p];
      net.params[p] = saved + h;
      std::vector<double> yp = net.forward(x);
      net.params[p] = saved - h;
      std::vector<double> ym = net.forward(x);
      net.params[p] = saved;
      double fd = 0.0;
      for (size_t o = 0; o < yp.size(); ++o) {
        fd += dout[o] * (yp[o] - ym[o]) / (2.0 * h);
      }
      CHECK(grad[p] == doctest::Approx(fd).epsilon(1e-4));
    }
  }
}

TEST_CASE("mlp backward accumulates across samples") {
  Rng rng(31);
  Mlp net(2, {3}, 1);
  net.init(rng, 1.0);
  std::vector<double> xa{0.1, 0.2}, xb{-0.4, 0.9}, dout{1.0};

  Mlp::Tape ta, tb;
  net.forward(xa, ta);
  net.forward(xb, tb);
  std::vector<double> ga(net.param_count(), 0.0);
  std::vector<double> gb(net.param_count(), 0.0);
  std::vector<double> gsum(net.param_count(), 0.0);
  net.backward(ta, dout, ga);
  net.backward(tb, dout, gb);
  net.backward(ta, dout, gsum);
  net.backward(tb, dout, gsum);
  for (int p = 0; p < net.param_count(); ++p) {
    CHECK(gsum[p] == doctest::Approx(ga[p] + gb[p]).epsilon(1e-12));
  }
}

TEST_CASE("adam first step moves by lr in the gradient sign") {
  Adam opt(2);
  std::vector<double> params{1.0, -1.0};
  std::vector<double> grad{0.3, -0.7};
  opt.step(params, grad, 0.1);
  // With bias correction, the first step is lr * g / (|g| + eps') ~ lr * sign.
  CHECK(params[0] == doctest::Approx(1.0 - 0.1).epsilon(1e-4));
  CHECK(params[1] == doctest::Approx(-1.0 + 0.1).epsilon(1e-4));
}

TEST_CASE("gae telescopes at gamma = lambda = 1") {
  std::vector<double> rewards{1.0, 2.0, 3.0};
  std::vector<double> values{0.5, 0.25, -0.5, 0.0};
  std::vector<bool> dones{false, false, true};
  GaeResult res = compute_gae(rewards, values, dones, {1.0, 1.0});
  // A_t = sum of remaining rewards - V(s_t); terminal cuts the bootstrap.
  CHECK(res.advantages[0] == doctest::Approx(6.0 - 0.5).epsilon(1e-12));
  CHECK(res.advantages[1] == doctest::Approx(5.0 - 0.25).epsilon(1e-12));
  CHECK(res.advantages[2] == doctest::Approx(3.0 + 0.5).epsilon(1e-12));
  for (int t = 0; t < 3; ++t) {
    CHECK(res.returns[t] == doctest::Approx(res.advantages[t] + values[t]));
  }
}

TEST_CASE("gae at lambda = 0 reduces to the one-step TD error") {
  std::vector<double> rewards{0.4, -0.2, 1.0};
  std::vector<double> values{0.1, 0.3, -0.2, 0.7};
  std::vector<bool> dones{false, false, false};
  double gamma = 0.9;
  GaeResult res = compute_gae(rewards, values, dones, {gamma, 0.0});
  for (int t = 0; t < 3; ++t) {
    double td = rewards[t] + gamma * values[t + 1] - values[t];
    CHECK(res.advantages[t] == doctest::Approx(td).epsilon(1e-12));
  }
}

TEST_CASE("gae hand-worked example") {
  // r = 1 everywhere, V = 0, gamma = 0.5, lambda = 1: A_t is the discounted
  // reward tail: [1 + 0.5 + 0.25, 1 + 0.5, 1].
  std::vector<double> rewards{1.0, 1.0, 1.0};
  std::vector<double> values{0.0, 0.0, 0.0, 0.0};
  std::vector<bool> dones{false, false, true};
  GaeResult res = compute_gae(rewards, values, dones, {0.5, 1.0});
  CHECK(res.advantages[0] == doctest::Approx(1.75).epsilon(1e-12));
  CHECK(res.advantages[1] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(res.advantages[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("checkpoint round trip is bit exact") {
  namespace fs = std::filesystem;
  Rng rng(5);
  Checkpoint ckpt;
  ckpt.policy = GaussianPolicy(6, {8, 8}, 3);
  ckpt.policy.net.init(rng);
  ckpt.policy.log_std = {-0.9, -1.1, -1.3};
  ckpt.value = Mlp(6, {8}, 1);
  ckpt.value.init(rng, 1.0);
  ckpt.obs_filter.resize(6);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> x(6);
    for (double& v : x) v = rng.normal() * 3.0 + 1.0;
    ckpt.obs_filter.update(x);
  }
  ckpt.obs_filter.frozen = true;

  fs::path path = fs::temp_directory_path() / "manip_ckpt_roundtrip.ckpt";
  save_checkpoint(ckpt, path.string());
  Checkpoint back = load_checkpoint(path.string());
  fs::remove(path);

  REQUIRE(back.policy.net.param_count() == ckpt.policy.net.param_count());
  for (int p = 0; p < ckpt.policy.net.param_count(); ++p) {
    CHECK(back.policy.net.params[p] == ckpt.policy.net.params[p]);
  }
  CHECK(back.policy.log_std == ckpt.policy.log_std);
  CHECK(back.value.params == ckpt.value.params);
  CHECK(back.obs_filter.count() == ckpt.obs_filter.count());
  CHECK(back.obs_filter.mean() == ckpt.obs_filter.mean());
  CHECK(back.obs_filter.m2() == ckpt.obs_filter.m2());
  CHECK(back.obs_filter.frozen == ckpt.obs_filter.frozen);
}

TEST_CASE("loading a malformed checkpoint fails loudly") {
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "manip_ckpt_bad.ckpt";
  std::ofstream(path.string()) << "not a checkpoint\n";
  CHECK_THROWS_AS(load_checkpoint(path.string()), CheckpointError);
  fs::remove(path);
}

TEST_CASE("normalizer matches two-pass statistics and freezes") {
  Rng rng(13);
  RunningNormalizer norm(2);
  std::vector<std::vector<double>> data;
  for (int i = 0; i < 400; ++i) {
    std::vector<double> x{rng.normal() * 2.0 + 3.0, rng.uniform()};
    norm.update(x);
    data.push_back(x);
  }
  for (int d = 0; d < 2; ++d) {
    double mean = 0.0;
    for (const auto& x : data) mean += x[d];
    mean /= data.size();
    double var = 0.0;
    for (const auto& x : data) var += (x[d] - mean) * (x[d] - mean);
    var /= data.size();
    CHECK(norm.mean()[d] == doctest::Approx(mean).epsilon(1e-10));
    CHECK(norm.variance()[d] == doctest::Approx(var).epsilon(1e-8));
  }
  norm.frozen = true;
  std::vector<double> before = norm.mean();
  norm.update({100.0, 100.0});
  CHECK(norm.mean() == before);
}

TEST_CASE("stored rollout log-probs match recomputation") {
  GaussianPolicy policy(3, {8}, 1);
  Rng rng(17);
  policy.net.init(rng);
  RunningNormalizer filter(3);
  TestbedEnv env(0.2);
  Trajectory traj = run_episode(env, policy, filter, RolloutMode::kStochastic, 3);
  REQUIRE(traj.length() > 0);
  for (int t = 0; t < traj.length(); ++t) {
    std::vector<double> mean = policy.net.forward(traj.obs[t]);
    CHECK(traj.log_probs[t] ==
          doctest::Approx(policy.log_prob(mean, traj.actions[t])).epsilon(1e-12));
  }
  // Deterministic rollouts take the mean action exactly.
  Trajectory det = run_episode(env, policy, filter, RolloutMode::kDeterministic, 3);
  for (int t = 0; t < det.length(); ++t) {
    std::vector<double> mean = policy.net.forward(det.obs[t]);
    CHECK(det.actions[t] == mean);
  }
}

TEST_CASE("collect_rollouts honors the sample budget deterministically") {
  GaussianPolicy policy(3, {8}, 1);
  Rng rng(19);
  policy.net.init(rng);
  RunningNormalizer filter(3);
  EnvFactory factory = [] { return std::make_unique<TestbedEnv>(0.2); };
  TrajectoryBatch a = collect_rollouts(policy, factory, filter, 300, 2, 4);
  CHECK(a.total_steps() >= 300);
  int sum = 0;
  for (const Trajectory& t : a.episodes) sum += t.length();
  CHECK(sum == a.total_steps());
  TrajectoryBatch b = collect_rollouts(policy, factory, filter, 300, 2, 4);
  REQUIRE(a.episodes.size() == b.episodes.size());
  for (size_t e = 0; e < a.episodes.size(); ++e) {
    CHECK(a.episodes[e].total_reward() == b.episodes[e].total_reward());
  }
}

TEST_CASE("ppo at zero learning rate leaves the policy unchanged") {
  PpoConfig cfg;
  cfg.hidden = {8};
  cfg.lr = 0.0;
  cfg.lr_decay = false;
  cfg.samples_per_iter = 120;
  cfg.iterations = 2;
  PpoTrainer trainer([] { return std::make_unique<TestbedEnv>(0.2); }, cfg, 1);
  std::vector<double> before = trainer.policy.net.params;
  std::vector<double> log_std_before = trainer.policy.log_std;
  trainer.iterate();
  CHECK(trainer.policy.net.params == before);
  CHECK(trainer.policy.log_std == log_std_before);
}

TEST_CASE("ppo solves the one-step bandit") {
  PpoConfig cfg;
  cfg.hidden = {8};
  cfg.samples_per_iter = 64;
  cfg.iterations = 200;
  cfg.lr = 1e-2;
  cfg.minibatch = 64;
  PpoTrainer trainer([] { return std::make_unique<BanditEnv>(); }, cfg, 7);
  double best = -1e9;
  for (int it = 0; it < cfg.iterations && best < 0.95; ++it) {
    best = std::max(best, trainer.iterate().mean_return);
  }
  CHECK(best > 0.95);
}

TEST_CASE("ppo runs are reproducible for a fixed seed") {
  auto run = [] {
    PpoConfig cfg;
    cfg.hidden = {8};
    cfg.samples_per_iter = 120;
    cfg.iterations = 3;
    PpoTrainer trainer([] { return std::make_unique<TestbedEnv>(0.2); }, cfg, 9);
    for (int i = 0; i < 3; ++i) trainer.iterate();
    return trainer.policy.net.params;
  };
  CHECK(run() == run());
}

}  // TEST_SUITE
