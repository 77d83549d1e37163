#ifndef MANIP_LEARNER_GAE_HPP_
#define MANIP_LEARNER_GAE_HPP_

#include <vector>

namespace manip {

struct GaeConfig {
  double gamma = 0.95;
  double lambda = 0.95;
};

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;  // advantages + values
};

// Generalized advantage estimation over one episode. `values` has one extra
// bootstrap entry at index L (pass 0 for terminal episodes). `dones[t]` marks
// a true termination at step t, which cuts the bootstrap and the recursion.
GaeResult compute_gae(const std::vector<double>& rewards,
                      const std::vector<double>& values,
                      const std::vector<bool>& dones, const GaeConfig& cfg);

}  // namespace manip

#endif  // MANIP_LEARNER_GAE_HPP_
