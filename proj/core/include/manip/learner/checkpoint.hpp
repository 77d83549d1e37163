#ifndef MANIP_LEARNER_CHECKPOINT_HPP_
#define MANIP_LEARNER_CHECKPOINT_HPP_

#include <stdexcept>
#include <string>

#include "manip/learner/normalizer.hpp"
#include "manip/learner/policy.hpp"

namespace manip {

struct CheckpointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Checkpoint {
  GaussianPolicy policy;
  Mlp value;
  RunningNormalizer obs_filter;
};

// Text format, 17 significant digits, round-trip exact.
void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace manip

#endif  // MANIP_LEARNER_CHECKPOINT_HPP_
