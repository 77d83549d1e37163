#include "manip/learner/gae.hpp"

#include <stdexcept>

namespace manip {

GaeResult compute_gae(const std::vector<double>& rewards,
                      const std::vector<double>& values,
                      const std::vector<bool>& dones, const GaeConfig& cfg) {
  size_t n = rewards.size();
  if (values.size() != n + 1 || dones.size() != n) {
    throw std::invalid_argument("gae input size mismatch");
  }
  GaeResult out;
  out.advantages.resize(n);
  out.returns.resize(n);
  double adv = 0.0;
  for (size_t t = n; t-- > 0;) {
    double live = dones[t] ? 0.0 : 1.0;
    double delta = rewards[t] + cfg.gamma * values[t + 1] * live - values[t];
    adv = delta + cfg.gamma * cfg.lambda * live * adv;
    out.advantages[t] = adv;
    out.returns[t] = adv + values[t];
  }
  return out;
}

}  // namespace manip
