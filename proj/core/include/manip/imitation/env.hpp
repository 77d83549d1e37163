#ifndef MANIP_IMITATION_ENV_HPP_
#define MANIP_IMITATION_ENV_HPP_

#include <cstdint>
#include <vector>

#include "manip/imitation/observation.hpp"
#include "manip/imitation/reward.hpp"
#include "manip/imitation/scene.hpp"
#include "manip/physics/stable_pd.hpp"
#include "manip/rng.hpp"

namespace manip {

struct StepResult {
  std::vector<double> obs;
  double reward = 0.0;     // full shaped reward for learning
  double tracking = 0.0;   // joint-tracking term used by the goodness score
  bool done = false;
};

// Minimal episodic environment interface shared by the manipulation task and
// the synthetic curriculum testbed.
class Env {
 public:
  virtual ~Env() = default;
  virtual int obs_dim() const = 0;
  virtual int action_dim() const = 0;
  virtual int horizon() const = 0;
  virtual std::vector<double> reset(uint64_t seed) = 0;
  virtual StepResult step(const std::vector<double>& action) = 0;
};

struct ActionConfig {
  double pos_bound = 0.05;    // m
  double angle_bound = 0.3;   // rad
  double alpha = 0.3;         // exponential filter coefficient
};

struct ActionFilterState {
  std::vector<double> previous;
  double alpha = 0.3;

  // filtered = alpha * a + (1 - alpha) * previous; updates `previous`.
  std::vector<double> apply(const std::vector<double>& a);
};

// Composes the filtered delta action with the reference hand pose at `time`
// to produce stable-PD targets, one per hand. The delta layout is, per hand,
// [dx, dy, dangle, dq...]; joint targets are clamped to the joint limits.
std::vector<PdTargets> action_to_targets(const std::vector<double>& delta,
                                         const ReferenceClip& clip, double time,
                                         const std::vector<HandModel>& hands);

// One random external-force window per episode, applied to every fingertip.
struct PerturbationConfig {
  bool enabled = false;
  double force = 8.0;      // N, split across fingertips
  double duration = 0.25;  // s
};

class ManipulationEnv : public Env {
 public:
  ManipulationEnv(SceneTemplate scene, ReferenceClip clip,
                  RewardConfig reward = {}, TerminationThresholds term = {},
                  ActionConfig action = {}, PerturbationConfig perturb = {});

  int obs_dim() const override { return layout_.dim(); }
  int action_dim() const override;
  int horizon() const override { return horizon_; }
  std::vector<double> reset(uint64_t seed) override;
  StepResult step(const std::vector<double>& action) override;

  const SimWorld& world() const { return world_; }
  const ReferenceClip& clip() const { return clip_; }
  int step_index() const { return step_index_; }
  bool diverged() const { return world_.diverged; }

 private:
  std::vector<double> observe();

  SceneTemplate scene_;
  ReferenceClip clip_;
  RewardConfig reward_;
  TerminationThresholds term_;
  ActionConfig action_;
  PerturbationConfig perturb_;
  ObservationLayout layout_;
  int horizon_ = 0;

  SimWorld world_;
  ActionFilterState filter_;
  int step_index_ = 0;
  bool done_ = false;
  double perturb_start_ = -1.0;
  Vec2 perturb_force_;
};

}  // namespace manip

#endif  // MANIP_IMITATION_ENV_HPP_
