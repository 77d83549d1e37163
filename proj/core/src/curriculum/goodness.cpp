#include "manip/curriculum/goodness.hpp"

#include <numeric>
#include <stdexcept>

namespace manip {

double goodness_score(int length, int horizon,
                      const std::vector<double>& tracking) {
  if (horizon <= 0) throw std::invalid_argument("goodness needs horizon > 0");
  if (static_cast<int>(tracking.size()) < length) {
    throw std::invalid_argument("goodness tracking shorter than length");
  }
  double sum = std::accumulate(tracking.begin(), tracking.begin() + length, 0.0);
  double t = static_cast<double>(horizon);
  return (length / t) * (sum / t);
}

double goodness(const GaussianPolicy& policy, const RunningNormalizer& filter,
                Env& env, int rollouts, uint64_t seed) {
  if (rollouts < 1) throw std::invalid_argument("goodness needs rollouts >= 1");
  double total = 0.0;
  for (int e = 0; e < rollouts; ++e) {
    Trajectory traj = run_episode(env, policy, filter, RolloutMode::kStochastic,
                                  hash_combine(seed, e));
    total += goodness_score(traj.length(), env.horizon(), traj.tracking);
  }
  return total / rollouts;
}

}  // namespace manip
