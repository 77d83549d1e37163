#ifndef MANIP_LEARNER_PPO_HPP_
#define MANIP_LEARNER_PPO_HPP_

#include <string>

#include "manip/learner/checkpoint.hpp"
#include "manip/learner/gae.hpp"
#include "manip/learner/optimizer.hpp"
#include "manip/learner/rollout.hpp"

namespace manip {

struct PpoConfig {
  std::vector<int> hidden{64, 64};
  double log_std_init = -1.0;
  double clip_eps = 0.2;
  int epochs = 4;
  int minibatch = 256;
  double lr = 3e-4;
  bool lr_decay = true;       // linear over `iterations`
  int samples_per_iter = 4096;
  int iterations = 300;
  double entropy_coef = 0.0;
  double max_kl = 0.5;        // early-stop guard per iteration
  int n_workers = 1;
  GaeConfig gae;
};

struct PpoStats {
  int iteration = 0;
  int episodes = 0;
  int samples = 0;
  double mean_return = 0.0;
  double mean_length = 0.0;
  double kl = 0.0;
  double policy_loss = 0.0;
  double value_loss = 0.0;
  bool kl_stopped = false;
};

// Single-task PPO; the environment factory can be swapped between
// iterations, which is how the curriculum retargets training.
class PpoTrainer {
 public:
  PpoTrainer(EnvFactory factory, PpoConfig cfg, uint64_t seed);

  // One collect + update cycle.
  PpoStats iterate();

  void set_env_factory(EnvFactory factory) { factory_ = std::move(factory); }
  const PpoConfig& config() const { return cfg_; }
  int iteration() const { return iteration_; }
  long total_samples() const { return total_samples_; }
  double current_lr() const;

  Checkpoint snapshot() const;
  void restore(const Checkpoint& ckpt);

  GaussianPolicy policy;
  Mlp value;
  RunningNormalizer obs_filter;
  std::vector<PpoStats> history;

 private:
  EnvFactory factory_;
  PpoConfig cfg_;
  uint64_t seed_;
  Rng rng_;
  Adam policy_opt_;
  Adam value_opt_;
  int iteration_ = 0;
  long total_samples_ = 0;
};

// CSV log: iteration, samples, episodes, mean_return, mean_length, kl,
// policy_loss, value_loss.
void write_training_log(const std::vector<PpoStats>& history,
                        const std::string& path);

}  // namespace manip

#endif  // MANIP_LEARNER_PPO_HPP_
