#ifndef MANIP_HARNESS_EVALUATION_HPP_
#define MANIP_HARNESS_EVALUATION_HPP_

#include <string>

#include "manip/curriculum/goodness.hpp"
#include "manip/imitation/scene.hpp"
#include "manip/learner/checkpoint.hpp"
#include "manip/learner/rollout.hpp"

namespace manip {

struct EvaluationReport {
  int rollouts = 0;
  int horizon = 0;
  double success_rate = 0.0;           // fraction finishing the full clip
  double mean_normalized_return = 0.0; // per-step reward / max reward, summed
  double mean_length = 0.0;
  double mean_goodness = 0.0;
  std::vector<double> completion;      // fraction reaching step t, t = 0..T
};

// Rolls the policy `n_rollouts` times and aggregates success-rate and
// completion statistics. `reward_max` is the per-step reward ceiling used to
// normalize returns.
EvaluationReport evaluate(const Checkpoint& ckpt, const EnvFactory& factory,
                          int n_rollouts, RolloutMode mode, uint64_t seed,
                          double reward_max);

// Convenience wrappers over `evaluate` for the manipulation task.
struct EvalSetup {
  SceneTemplate scene;
  ReferenceClip clip;
  RewardConfig reward;
  TerminationThresholds termination;
  ActionConfig action;
};

EvaluationReport eval_policy(const Checkpoint& ckpt, const EvalSetup& setup,
                             int n_rollouts, RolloutMode mode, uint64_t seed);

// Re-evaluation under random external force windows on the fingertips.
EvaluationReport perturb_eval(const Checkpoint& ckpt, const EvalSetup& setup,
                              double force_magnitude, double duration,
                              int n_rollouts, uint64_t seed);

// Re-evaluation with scaled object mass/inertia and friction.
EvaluationReport dynamics_variation_eval(const Checkpoint& ckpt,
                                         const EvalSetup& setup,
                                         double mass_scale,
                                         double friction_scale, int n_rollouts,
                                         uint64_t seed);

// CSV with a summary row followed by the completion curve.
void save_report(const EvaluationReport& report, const std::string& path);

}  // namespace manip

#endif  // MANIP_HARNESS_EVALUATION_HPP_
