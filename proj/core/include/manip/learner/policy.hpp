#ifndef MANIP_LEARNER_POLICY_HPP_
#define MANIP_LEARNER_POLICY_HPP_

#include <cmath>
#include <vector>

#include "manip/learner/mlp.hpp"

namespace manip {

// Diagonal Gaussian policy: MLP action means plus state-independent,
// learned log standard deviations.
struct GaussianPolicy {
  Mlp net;
  std::vector<double> log_std;

  GaussianPolicy() = default;
  GaussianPolicy(int obs_dim, std::vector<int> hidden, int act_dim,
                 double log_std_init = -1.0)
      : net(obs_dim, std::move(hidden), act_dim),
        log_std(act_dim, log_std_init) {}

  int action_dim() const { return net.output_dim(); }

  std::vector<double> sample(const std::vector<double>& mean, Rng& rng) const {
    std::vector<double> a(mean.size());
    for (size_t i = 0; i < mean.size(); ++i) {
      a[i] = mean[i] + std::exp(log_std[i]) * rng.normal();
    }
    return a;
  }

  double log_prob(const std::vector<double>& mean,
                  const std::vector<double>& action) const {
    double lp = 0.0;
    for (size_t i = 0; i < mean.size(); ++i) {
      double inv_std = std::exp(-log_std[i]);
      double z = (action[i] - mean[i]) * inv_std;
      lp += -0.5 * z * z - log_std[i] - 0.5 * std::log(2.0 * M_PI);
    }
    return lp;
  }

  double entropy() const {
    double h = 0.0;
    for (double ls : log_std) h += ls + 0.5 * std::log(2.0 * M_PI * std::exp(1.0));
    return h;
  }
};

}  // namespace manip

#endif  // MANIP_LEARNER_POLICY_HPP_
