#ifndef MANIP_CURRICULUM_GOODNESS_HPP_
#define MANIP_CURRICULUM_GOODNESS_HPP_

#include <cstdint>
#include <vector>

#include "manip/learner/rollout.hpp"

namespace manip {

// Goodness of one rollout: the normalized episode length times the
// normalized sum of per-step joint-tracking rewards,
//   f = (L / T) * (sum_{t < L} r_track,t / T).
double goodness_score(int length, int horizon,
                      const std::vector<double>& tracking);

// Mean goodness over `rollouts` stochastic episodes with seeds derived from
// `seed`, so shapes evaluated with the same seed share evaluation noise.
double goodness(const GaussianPolicy& policy, const RunningNormalizer& filter,
                Env& env, int rollouts, uint64_t seed);

}  // namespace manip

#endif  // MANIP_CURRICULUM_GOODNESS_HPP_
