#ifndef MANIP_CURRICULUM_SCHEDULER_HPP_
#define MANIP_CURRICULUM_SCHEDULER_HPP_

#include <string>
#include <vector>

#include "manip/learner/ppo.hpp"

namespace manip {

// Ordered family of tasks: shape 0 is the source, the last shape the target.
struct ShapeLadder {
  std::vector<std::string> names;
  std::vector<EnvFactory> factories;

  int size() const { return static_cast<int>(factories.size()); }
};

struct CurriculumConfig {
  int update_interval = 20;    // K policy iterations between scheduler rounds
  double threshold = 0.55;     // goodness counted as success
  int total_iterations = 300;  // PPO iteration budget for the whole run
  int eval_rollouts = 8;       // E rollouts per shape per round
  int starvation_limit = 5;    // R consecutive picks before forcing variety
};

// Best score and checkpoint seen per shape.
struct PolicyRegistry {
  std::vector<double> scores;
  std::vector<Checkpoint> policies;
  std::vector<int> first_success;  // PPO iteration of first score >= d, or -1
};

struct CurriculumRecord {
  int iteration = 0;      // PPO iterations completed at this round
  int trained_shape = 0;  // shape trained during the preceding interval
  std::vector<double> scores;
};

struct CurriculumTrace {
  std::vector<CurriculumRecord> records;
  std::vector<int> selections;  // trained shape per round, in order
};

struct CurriculumResult {
  PolicyRegistry registry;
  CurriculumTrace trace;
};

// Goodness of one policy on every shape, shared per-round seeds.
std::vector<double> evaluate_all(const Checkpoint& ckpt,
                                 const ShapeLadder& ladder, int eval_rollouts,
                                 uint64_t seed);

// Algorithm: keep the best (score, checkpoint) per shape; strict improvement
// only.
void update_registry(PolicyRegistry& reg, const Checkpoint& ckpt,
                     const std::vector<double>& scores, int iteration,
                     double threshold);

// Best-performing unsuccessful shape (ties to the lowest id), with a
// starvation override after `starvation_limit` identical picks and uniform
// refinement once every shape is successful.
int select_next(const PolicyRegistry& reg, const CurriculumConfig& cfg,
                const std::vector<int>& history, Rng& rng);

// Greedy shape curriculum. `source` optionally seeds the run with a
// pre-trained policy; pass nullptr to cold-start from random parameters.
CurriculumResult run_greedy(const ShapeLadder& ladder,
                            const CurriculumConfig& cfg, const PpoConfig& ppo,
                            uint64_t seed, const Checkpoint* source = nullptr);

// Naive curriculum: strictly in ladder order, advance only on success.
CurriculumResult run_naive(const ShapeLadder& ladder,
                           const CurriculumConfig& cfg, const PpoConfig& ppo,
                           uint64_t seed, const Checkpoint* source = nullptr);

enum class BaselineKind { kDirectTarget, kSourcePlusTarget, kAllMorphs };

struct BaselineResult {
  Checkpoint policy;
  bool success = false;       // deterministic target rollout runs to horizon
  double target_goodness = 0.0;
};

BaselineResult run_baseline(BaselineKind kind, const ShapeLadder& ladder,
                            const CurriculumConfig& cfg, const PpoConfig& ppo,
                            uint64_t seed, const Checkpoint* source = nullptr);

// CSV: iteration, selected shape, per-shape scores, per-shape success flags.
void save_trace(const CurriculumTrace& trace, int num_shapes, double threshold,
                const std::string& path);

// One checkpoint file per shape plus a scores manifest.
void save_registry(const PolicyRegistry& reg, const std::string& dir);
PolicyRegistry load_registry(const std::string& dir);

// The synthetic scheduler testbed: disturbance gains with a non-monotone
// difficulty profile (easy, hard, easy, easy, hard, medium).
ShapeLadder make_testbed_ladder();

}  // namespace manip

#endif  // MANIP_CURRICULUM_SCHEDULER_HPP_
