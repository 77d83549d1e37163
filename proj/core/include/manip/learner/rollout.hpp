#ifndef MANIP_LEARNER_ROLLOUT_HPP_
#define MANIP_LEARNER_ROLLOUT_HPP_

#include <functional>
#include <memory>

#include "manip/imitation/env.hpp"
#include "manip/learner/normalizer.hpp"
#include "manip/learner/policy.hpp"

namespace manip {

enum class RolloutMode { kStochastic, kDeterministic };

struct Trajectory {
  std::vector<std::vector<double>> obs;       // normalized, as seen by the net
  std::vector<std::vector<double>> raw_obs;   // pre-normalization, for stats
  std::vector<double> final_obs;              // normalized obs after the last step
  std::vector<std::vector<double>> actions;
  std::vector<double> log_probs;
  std::vector<double> rewards;
  std::vector<double> tracking;
  bool terminated = false;  // early termination (no bootstrap value)

  int length() const { return static_cast<int>(rewards.size()); }
  double total_reward() const;
};

using EnvFactory = std::function<std::unique_ptr<Env>()>;

// One full episode; deterministic given (seed, mode).
Trajectory run_episode(Env& env, const GaussianPolicy& policy,
                       const RunningNormalizer& filter, RolloutMode mode,
                       uint64_t seed);

struct TrajectoryBatch {
  std::vector<Trajectory> episodes;
  int total_steps() const;
};

// Gathers at least n_samples steps across n_workers threads. Environments
// are created on the calling thread; each worker runs its own with seeds
// derived from seed + worker index, and the batch is assembled in worker
// order so the result is deterministic for fixed (seed, n_workers).
TrajectoryBatch collect_rollouts(const GaussianPolicy& policy,
                                 const EnvFactory& factory,
                                 const RunningNormalizer& filter, int n_samples,
                                 int n_workers, uint64_t seed);

}  // namespace manip

#endif  // MANIP_LEARNER_ROLLOUT_HPP_
