#include "manip/learner/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace manip {

namespace {

// Flat sample view of a batch.
struct FlatBatch {
  std::vector<const std::vector<double>*> obs;
  std::vector<const std::vector<double>*> actions;
  std::vector<double> old_log_probs;
  std::vector<double> advantages;
  std::vector<double> returns;
  size_t size() const { return obs.size(); }
};

}  // namespace

PpoTrainer::PpoTrainer(EnvFactory factory, PpoConfig cfg, uint64_t seed)
    : factory_(std::move(factory)),
      cfg_(cfg),
      seed_(seed),
      rng_(hash_combine(seed, 0x99055)) {
  std::unique_ptr<Env> probe = factory_();
  int obs_dim = probe->obs_dim();
  int act_dim = probe->action_dim();

  Rng init_rng(hash_combine(seed, 0x1417));
  policy = GaussianPolicy(obs_dim, cfg_.hidden, act_dim, cfg_.log_std_init);
  policy.net.init(init_rng, 0.01);
  value = Mlp(obs_dim, cfg_.hidden, 1);
  value.init(init_rng, 1.0);
  obs_filter.resize(obs_dim);

  policy_opt_.resize(policy.net.params.size() + policy.log_std.size());
  value_opt_.resize(value.params.size());
}

double PpoTrainer::current_lr() const {
  if (!cfg_.lr_decay) return cfg_.lr;
  double frac = 1.0 - static_cast<double>(iteration_) / cfg_.iterations;
  return cfg_.lr * std::max(0.05, frac);
}

Checkpoint PpoTrainer::snapshot() const {
  return Checkpoint{policy, value, obs_filter};
}

void PpoTrainer::restore(const Checkpoint& ckpt) {
  policy = ckpt.policy;
  value = ckpt.value;
  obs_filter = ckpt.obs_filter;
  policy_opt_.resize(policy.net.params.size() + policy.log_std.size());
  value_opt_.resize(value.params.size());
}

PpoStats PpoTrainer::iterate() {
  TrajectoryBatch batch =
      collect_rollouts(policy, factory_, obs_filter, cfg_.samples_per_iter,
                       cfg_.n_workers, hash_combine(seed_, iteration_));

  FlatBatch flat;
  for (const Trajectory& traj : batch.episodes) {
    int len = traj.length();
    std::vector<double> values(len + 1);
    for (int t = 0; t < len; ++t) values[t] = value.forward(traj.obs[t])[0];
    values[len] = traj.terminated ? 0.0 : value.forward(traj.final_obs)[0];
    std::vector<bool> dones(len, false);
    dones[len - 1] = traj.terminated;
    std::vector<double> rewards = traj.rewards;
    GaeResult gae = compute_gae(rewards, values, dones, cfg_.gae);
    for (int t = 0; t < len; ++t) {
      flat.obs.push_back(&traj.obs[t]);
      flat.actions.push_back(&traj.actions[t]);
      flat.old_log_probs.push_back(traj.log_probs[t]);
      flat.advantages.push_back(gae.advantages[t]);
      flat.returns.push_back(gae.returns[t]);
    }
  }
  size_t n = flat.size();
  if (n == 0) throw std::runtime_error("ppo: empty batch");

  // Normalize advantages to mean 0, std 1.
  double mean = std::accumulate(flat.advantages.begin(), flat.advantages.end(),
                                0.0) / n;
  double var = 0.0;
  for (double a : flat.advantages) var += (a - mean) * (a - mean);
  double inv_std = 1.0 / (std::sqrt(var / n) + 1e-8);
  for (double& a : flat.advantages) a = (a - mean) * inv_std;

  double lr = current_lr();
  int act_dim = policy.action_dim();
  size_t np = policy.net.params.size();

  PpoStats stats;
  stats.iteration = iteration_;
  double ploss_sum = 0.0, vloss_sum = 0.0;
  int mb_count = 0;

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  auto batch_kl = [&]() {
    double kl = 0.0;
    for (size_t i = 0; i < n; ++i) {
      std::vector<double> m = policy.net.forward(*flat.obs[i]);
      kl += flat.old_log_probs[i] - policy.log_prob(m, *flat.actions[i]);
    }
    return kl / n;
  };

  for (int epoch = 0; epoch < cfg_.epochs; ++epoch) {
    // Fisher-Yates shuffle with the trainer's own stream.
    for (size_t i = n - 1; i > 0; --i) {
      size_t j = rng_.uniform_index(static_cast<uint32_t>(i + 1));
      std::swap(order[i], order[j]);
    }
    for (size_t start = 0; start < n; start += cfg_.minibatch) {
      size_t end = std::min(n, start + cfg_.minibatch);
      double mb = static_cast<double>(end - start);
      std::vector<double> pgrad(np + act_dim, 0.0);
      std::vector<double> net_grad(np, 0.0);
      std::vector<double> vgrad(value.params.size(), 0.0);
      double ploss = 0.0, vloss = 0.0;

      Mlp::Tape tape;
      for (size_t k = start; k < end; ++k) {
        size_t i = order[k];
        const std::vector<double>& obs = *flat.obs[i];
        const std::vector<double>& act = *flat.actions[i];
        double adv = flat.advantages[i];

        std::vector<double> m = policy.net.forward(obs, tape);
        double newlp = policy.log_prob(m, act);
        double ratio = std::exp(newlp - flat.old_log_probs[i]);
        double clipped =
            clamp(ratio, 1.0 - cfg_.clip_eps, 1.0 + cfg_.clip_eps);
        double surr = std::min(ratio * adv, clipped * adv);
        ploss += -surr;
        // Gradient flows only through the unclipped branch when it is active.
        double dlp = 0.0;
        if (ratio * adv <= clipped * adv) dlp = -ratio * adv / mb;
        if (dlp != 0.0) {
          std::vector<double> dmean(act_dim);
          for (int d = 0; d < act_dim; ++d) {
            double sigma2 = std::exp(2.0 * policy.log_std[d]);
            double z2 = (act[d] - m[d]) * (act[d] - m[d]) / sigma2;
            dmean[d] = dlp * (act[d] - m[d]) / sigma2;
            pgrad[np + d] += dlp * (z2 - 1.0);
          }
          policy.net.backward(tape, dmean, net_grad);
        }
        if (cfg_.entropy_coef > 0.0) {
          for (int d = 0; d < act_dim; ++d) {
            pgrad[np + d] += -cfg_.entropy_coef / mb;
          }
        }

        double v = value.forward(obs, tape)[0];
        double err = v - flat.returns[i];
        vloss += 0.5 * err * err;
        value.backward(tape, {err / mb}, vgrad);
      }
      for (size_t i = 0; i < np; ++i) pgrad[i] = net_grad[i];

      std::vector<double> pparams = policy.net.params;
      pparams.insert(pparams.end(), policy.log_std.begin(),
                     policy.log_std.end());
      policy_opt_.step(pparams, pgrad, lr);
      std::copy(pparams.begin(), pparams.begin() + np,
                policy.net.params.begin());
      std::copy(pparams.begin() + np, pparams.end(), policy.log_std.begin());
      value_opt_.step(value.params, vgrad, lr);

      ploss_sum += ploss / mb;
      vloss_sum += vloss / mb;
      ++mb_count;
    }
    stats.kl = batch_kl();
    if (stats.kl > cfg_.max_kl) {
      stats.kl_stopped = true;
      break;
    }
  }

  // Fold the fresh observations into the running filter after the update so
  // the stored log-probs stay consistent with the statistics they used.
  for (const Trajectory& traj : batch.episodes) {
    for (const std::vector<double>& raw : traj.raw_obs) obs_filter.update(raw);
  }

  stats.episodes = static_cast<int>(batch.episodes.size());
  stats.samples = batch.total_steps();
  double ret = 0.0, len = 0.0;
  for (const Trajectory& traj : batch.episodes) {
    ret += traj.total_reward();
    len += traj.length();
  }
  stats.mean_return = ret / stats.episodes;
  stats.mean_length = len / stats.episodes;
  stats.policy_loss = mb_count ? ploss_sum / mb_count : 0.0;
  stats.value_loss = mb_count ? vloss_sum / mb_count : 0.0;

  ++iteration_;
  total_samples_ += stats.samples;
  history.push_back(stats);
  return stats;
}

void write_training_log(const std::vector<PpoStats>& history,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write training log: " + path);
  out << "iteration,samples,episodes,mean_return,mean_length,kl,policy_loss,"
         "value_loss,kl_stopped\n";
  char buf[256];
  for (const PpoStats& s : history) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                  s.iteration, s.samples, s.episodes, s.mean_return,
                  s.mean_length, s.kl, s.policy_loss, s.value_loss,
                  s.kl_stopped ? 1 : 0);
    out << buf;
  }
}

}  // namespace manip
