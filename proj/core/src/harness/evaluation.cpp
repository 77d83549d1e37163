#include "manip/harness/evaluation.hpp"

#include <cstdio>
#include <fstream>
#include <memory>

namespace manip {

EvaluationReport evaluate(const Checkpoint& ckpt, const EnvFactory& factory,
                          int n_rollouts, RolloutMode mode, uint64_t seed,
                          double reward_max) {
  std::unique_ptr<Env> env = factory();
  EvaluationReport report;
  report.rollouts = n_rollouts;
  report.horizon = env->horizon();
  report.completion.assign(report.horizon + 1, 0.0);

  double ret = 0.0, len = 0.0, good = 0.0;
  int successes = 0;
  for (int e = 0; e < n_rollouts; ++e) {
    Trajectory traj = run_episode(*env, ckpt.policy, ckpt.obs_filter, mode,
                                  hash_combine(seed, e));
    int L = traj.length();
    for (int t = 0; t <= L; ++t) report.completion[t] += 1.0;
    if (L == report.horizon && !traj.terminated) ++successes;
    ret += traj.total_reward() / reward_max;
    len += L;
    good += goodness_score(L, report.horizon, traj.tracking);
  }
  for (double& c : report.completion) c /= n_rollouts;
  report.success_rate = static_cast<double>(successes) / n_rollouts;
  report.mean_normalized_return = ret / n_rollouts;
  report.mean_length = len / n_rollouts;
  report.mean_goodness = good / n_rollouts;
  return report;
}

namespace {

EnvFactory manipulation_factory(const EvalSetup& setup,
                                PerturbationConfig perturb) {
  return [setup, perturb]() -> std::unique_ptr<Env> {
    return std::make_unique<ManipulationEnv>(setup.scene, setup.clip,
                                             setup.reward, setup.termination,
                                             setup.action, perturb);
  };
}

}  // namespace

EvaluationReport eval_policy(const Checkpoint& ckpt, const EvalSetup& setup,
                             int n_rollouts, RolloutMode mode, uint64_t seed) {
  return evaluate(ckpt, manipulation_factory(setup, {}), n_rollouts, mode,
                  seed, setup.reward.max_total());
}

EvaluationReport perturb_eval(const Checkpoint& ckpt, const EvalSetup& setup,
                              double force_magnitude, double duration,
                              int n_rollouts, uint64_t seed) {
  PerturbationConfig perturb;
  perturb.enabled = true;
  perturb.force = force_magnitude;
  perturb.duration = duration;
  return evaluate(ckpt, manipulation_factory(setup, perturb), n_rollouts,
                  RolloutMode::kStochastic, seed, setup.reward.max_total());
}

EvaluationReport dynamics_variation_eval(const Checkpoint& ckpt,
                                         const EvalSetup& setup,
                                         double mass_scale,
                                         double friction_scale, int n_rollouts,
                                         uint64_t seed) {
  EvalSetup varied = setup;
  varied.scene.object_mass_scale *= mass_scale;
  varied.scene.friction_scale *= friction_scale;
  return evaluate(ckpt, manipulation_factory(varied, {}), n_rollouts,
                  RolloutMode::kStochastic, seed, setup.reward.max_total());
}

void save_report(const EvaluationReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  char buf[256];
  out << "rollouts,horizon,success_rate,mean_normalized_return,mean_length,"
         "mean_goodness\n";
  std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%.17g\n",
                report.rollouts, report.horizon, report.success_rate,
                report.mean_normalized_return, report.mean_length,
                report.mean_goodness);
  out << buf;
  out << "step,completion\n";
  for (size_t t = 0; t < report.completion.size(); ++t) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", t, report.completion[t]);
    out << buf;
  }
}

}  // namespace manip
