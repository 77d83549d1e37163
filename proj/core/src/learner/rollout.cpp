#include "manip/learner/rollout.hpp"

#include <numeric>
#include <stdexcept>
#include <thread>

namespace manip {

double Trajectory::total_reward() const {
  return std::accumulate(rewards.begin(), rewards.end(), 0.0);
}

int TrajectoryBatch::total_steps() const {
  int n = 0;
  for (const Trajectory& t : episodes) n += t.length();
  return n;
}

Trajectory run_episode(Env& env, const GaussianPolicy& policy,
                       const RunningNormalizer& filter, RolloutMode mode,
                       uint64_t seed) {
  Rng rng(hash_combine(seed, 0xac710'4e01));
  Trajectory traj;
  std::vector<double> raw = env.reset(seed);
  int horizon = env.horizon();
  for (int t = 0; t < horizon; ++t) {
    std::vector<double> obs = filter.normalize(raw);
    std::vector<double> mean = policy.net.forward(obs);
    std::vector<double> action =
        mode == RolloutMode::kStochastic ? policy.sample(mean, rng) : mean;
    double lp = policy.log_prob(mean, action);

    StepResult r = env.step(action);
    traj.raw_obs.push_back(std::move(raw));
    traj.obs.push_back(std::move(obs));
    traj.actions.push_back(std::move(action));
    traj.log_probs.push_back(lp);
    traj.rewards.push_back(r.reward);
    traj.tracking.push_back(r.tracking);
    raw = std::move(r.obs);
    if (r.done) {
      traj.terminated = t + 1 < horizon;
      break;
    }
  }
  traj.final_obs = filter.normalize(raw);
  return traj;
}

TrajectoryBatch collect_rollouts(const GaussianPolicy& policy,
                                 const EnvFactory& factory,
                                 const RunningNormalizer& filter, int n_samples,
                                 int n_workers, uint64_t seed) {
  if (n_workers < 1) throw std::invalid_argument("need at least one worker");
  std::vector<std::unique_ptr<Env>> envs;
  for (int w = 0; w < n_workers; ++w) envs.push_back(factory());

  // Fixed per-worker quotas keep the batch independent of scheduling.
  std::vector<int> quota(n_workers, n_samples / n_workers);
  for (int w = 0; w < n_samples % n_workers; ++w) quota[w] += 1;

  std::vector<std::vector<Trajectory>> results(n_workers);
  std::vector<std::string> errors(n_workers);
  auto work = [&](int w) {
    try {
      int collected = 0;
      uint64_t worker_seed = seed + static_cast<uint64_t>(w);
      for (uint64_t e = 0; collected < quota[w]; ++e) {
        Trajectory traj =
            run_episode(*envs[w], policy, filter, RolloutMode::kStochastic,
                        hash_combine(worker_seed, e));
        collected += traj.length();
        results[w].push_back(std::move(traj));
      }
    } catch (const std::exception& ex) {
      errors[w] = ex.what();
    }
  };

  if (n_workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < n_workers; ++w) threads.emplace_back(work, w);
    for (std::thread& t : threads) t.join();
  }
  for (int w = 0; w < n_workers; ++w) {
    if (!errors[w].empty()) {
      throw std::runtime_error("rollout worker " + std::to_string(w) +
                               " failed: " + errors[w]);
    }
  }

  TrajectoryBatch batch;
  for (auto& r : results) {
    for (Trajectory& t : r) batch.episodes.push_back(std::move(t));
  }
  return batch;
}

}  // namespace manip
