#include "manip/curriculum/scheduler.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "manip/curriculum/goodness.hpp"
#include "manip/curriculum/testbed.hpp"

namespace manip {

namespace {

// Samples one of several tasks per episode; used by the joint-training
// baselines.
class MixtureEnv : public Env {
 public:
  explicit MixtureEnv(std::vector<std::unique_ptr<Env>> envs)
      : envs_(std::move(envs)), current_(envs_.front().get()) {}

  int obs_dim() const override { return current_->obs_dim(); }
  int action_dim() const override { return current_->action_dim(); }
  int horizon() const override { return current_->horizon(); }

  std::vector<double> reset(uint64_t seed) override {
    uint32_t idx = static_cast<uint32_t>(
        hash_combine(seed, 0x313f7e) % envs_.size());
    current_ = envs_[idx].get();
    return current_->reset(seed);
  }

  StepResult step(const std::vector<double>& action) override {
    return current_->step(action);
  }

 private:
  std::vector<std::unique_ptr<Env>> envs_;
  Env* current_;
};

EnvFactory mixture_factory(const ShapeLadder& ladder,
                           const std::vector<int>& shapes) {
  return [factories = ladder.factories, shapes]() -> std::unique_ptr<Env> {
    std::vector<std::unique_ptr<Env>> envs;
    for (int j : shapes) envs.push_back(factories[j]());
    return std::make_unique<MixtureEnv>(std::move(envs));
  };
}

PolicyRegistry init_registry(const PpoTrainer& trainer, int shapes) {
  PolicyRegistry reg;
  reg.scores.assign(shapes, 0.0);
  reg.policies.assign(shapes, trainer.snapshot());
  reg.first_success.assign(shapes, -1);
  return reg;
}

}  // namespace

std::vector<double> evaluate_all(const Checkpoint& ckpt,
                                 const ShapeLadder& ladder, int eval_rollouts,
                                 uint64_t seed) {
  std::vector<double> scores(ladder.size());
  for (int j = 0; j < ladder.size(); ++j) {
    std::unique_ptr<Env> env = ladder.factories[j]();
    scores[j] =
        goodness(ckpt.policy, ckpt.obs_filter, *env, eval_rollouts, seed);
  }
  return scores;
}

void update_registry(PolicyRegistry& reg, const Checkpoint& ckpt,
                     const std::vector<double>& scores, int iteration,
                     double threshold) {
  for (size_t j = 0; j < scores.size(); ++j) {
    if (scores[j] > reg.scores[j]) {
      reg.scores[j] = scores[j];
      reg.policies[j] = ckpt;
    }
    if (reg.first_success[j] < 0 && scores[j] >= threshold) {
      reg.first_success[j] = iteration;
    }
  }
}

int select_next(const PolicyRegistry& reg, const CurriculumConfig& cfg,
                const std::vector<int>& history, Rng& rng) {
  int m = static_cast<int>(reg.scores.size());
  // Starvation rule: after R identical picks, force a different shape.
  if (static_cast<int>(history.size()) >= cfg.starvation_limit && m > 1) {
    int last = history.back();
    bool starved = true;
    for (int i = 0; i < cfg.starvation_limit; ++i) {
      if (history[history.size() - 1 - i] != last) {
        starved = false;
        break;
      }
    }
    if (starved) {
      int pick = static_cast<int>(rng.uniform_index(m - 1));
      return pick >= last ? pick + 1 : pick;
    }
  }
  int best = -1;
  for (int j = 0; j < m; ++j) {
    if (reg.scores[j] >= cfg.threshold) continue;
    if (best < 0 || reg.scores[j] > reg.scores[best]) best = j;
  }
  if (best < 0) {
    // Everything successful: refine a random shape.
    return static_cast<int>(rng.uniform_index(m));
  }
  return best;
}

namespace {

CurriculumResult run_curriculum(const ShapeLadder& ladder,
                                const CurriculumConfig& cfg,
                                const PpoConfig& ppo, uint64_t seed,
                                const Checkpoint* source, bool greedy) {
  PpoTrainer trainer(ladder.factories[0], ppo, seed);
  if (source) trainer.restore(*source);
  PolicyRegistry reg = init_registry(trainer, ladder.size());
  CurriculumTrace trace;
  Rng rng(hash_combine(seed, 0x5e1ec7));
  std::vector<int> history;
  int current = 0;
  int round = 0;

  while (trainer.iteration() < cfg.total_iterations) {
    int todo = std::min(cfg.update_interval,
                        cfg.total_iterations - trainer.iteration());
    for (int i = 0; i < todo; ++i) trainer.iterate();

    Checkpoint snap = trainer.snapshot();
    std::vector<double> scores;
    if (greedy) {
      scores = evaluate_all(snap, ladder, cfg.eval_rollouts,
                            hash_combine(seed, 7000 + round));
      update_registry(reg, snap, scores, trainer.iteration(), cfg.threshold);
    } else {
      // The naive schedule only ever measures the shape it is training; a
      // later shape counts as reached only once it is actually trained on.
      scores = reg.scores;
      std::unique_ptr<Env> env = ladder.factories[current]();
      scores[current] = goodness(snap.policy, snap.obs_filter, *env,
                                 cfg.eval_rollouts,
                                 hash_combine(seed, 7000 + round));
      update_registry(reg, snap, scores, trainer.iteration(), cfg.threshold);
    }
    trace.records.push_back({trainer.iteration(), current, scores});
    trace.selections.push_back(current);
    history.push_back(current);
    if (trainer.iteration() >= cfg.total_iterations) break;

    if (greedy) {
      int next = select_next(reg, cfg, history, rng);
      if (next != current) {
        trainer.restore(reg.policies[next]);
        trainer.set_env_factory(ladder.factories[next]);
        current = next;
      }
    } else {
      // Naive: advance in ladder order only on success, never revisit.
      if (scores[current] >= cfg.threshold && current + 1 < ladder.size()) {
        ++current;
        trainer.set_env_factory(ladder.factories[current]);
      }
    }
    ++round;
  }
  return {std::move(reg), std::move(trace)};
}

}  // namespace

CurriculumResult run_greedy(const ShapeLadder& ladder,
                            const CurriculumConfig& cfg, const PpoConfig& ppo,
                            uint64_t seed, const Checkpoint* source) {
  return run_curriculum(ladder, cfg, ppo, seed, source, true);
}

CurriculumResult run_naive(const ShapeLadder& ladder,
                           const CurriculumConfig& cfg, const PpoConfig& ppo,
                           uint64_t seed, const Checkpoint* source) {
  return run_curriculum(ladder, cfg, ppo, seed, source, false);
}

BaselineResult run_baseline(BaselineKind kind, const ShapeLadder& ladder,
                            const CurriculumConfig& cfg, const PpoConfig& ppo,
                            uint64_t seed, const Checkpoint* source) {
  int target = ladder.size() - 1;
  EnvFactory factory;
  switch (kind) {
    case BaselineKind::kDirectTarget:
      factory = ladder.factories[target];
      break;
    case BaselineKind::kSourcePlusTarget:
      factory = mixture_factory(ladder, {0, target});
      break;
    case BaselineKind::kAllMorphs: {
      std::vector<int> all(ladder.size());
      for (int j = 0; j < ladder.size(); ++j) all[j] = j;
      factory = mixture_factory(ladder, all);
      break;
    }
  }
  PpoTrainer trainer(std::move(factory), ppo, seed);
  if (source) trainer.restore(*source);

  for (int i = 0; i < cfg.total_iterations; ++i) trainer.iterate();

  BaselineResult out;
  out.policy = trainer.snapshot();
  std::unique_ptr<Env> env = ladder.factories[target]();
  out.target_goodness = goodness(out.policy.policy, out.policy.obs_filter,
                                 *env, cfg.eval_rollouts,
                                 hash_combine(seed, 0xba5e));
  if (cfg.total_iterations > 0) {
    Trajectory traj =
        run_episode(*env, out.policy.policy, out.policy.obs_filter,
                    RolloutMode::kDeterministic, hash_combine(seed, 0xde7));
    out.success = !traj.terminated && traj.length() == env->horizon();
  }
  return out;
}

void save_trace(const CurriculumTrace& trace, int num_shapes, double threshold,
                const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace: " + path);
  out << "iteration,selected_shape";
  for (int j = 0; j < num_shapes; ++j) out << ",S_" << j;
  for (int j = 0; j < num_shapes; ++j) out << ",success_" << j;
  out << "\n";
  char buf[64];
  for (const CurriculumRecord& r : trace.records) {
    out << r.iteration << "," << r.trained_shape;
    for (double s : r.scores) {
      std::snprintf(buf, sizeof(buf), ",%.17g", s);
      out << buf;
    }
    for (double s : r.scores) out << "," << (s >= threshold ? 1 : 0);
    out << "\n";
  }
}

void save_registry(const PolicyRegistry& reg, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream manifest(dir + "/scores.csv");
  if (!manifest) throw std::runtime_error("cannot write registry: " + dir);
  manifest << "shape,score,first_success,checkpoint\n";
  char buf[64];
  for (size_t j = 0; j < reg.scores.size(); ++j) {
    std::string name = "shape_" + std::to_string(j) + ".ckpt";
    save_checkpoint(reg.policies[j], dir + "/" + name);
    std::snprintf(buf, sizeof(buf), "%.17g", reg.scores[j]);
    manifest << j << "," << buf << "," << reg.first_success[j] << "," << name
             << "\n";
  }
}

PolicyRegistry load_registry(const std::string& dir) {
  std::ifstream manifest(dir + "/scores.csv");
  if (!manifest) throw std::runtime_error("cannot open registry: " + dir);
  PolicyRegistry reg;
  std::string line;
  std::getline(manifest, line);  // header
  while (std::getline(manifest, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4) throw std::runtime_error("bad registry manifest line");
    reg.scores.push_back(std::stod(cells[1]));
    reg.first_success.push_back(std::stoi(cells[2]));
    reg.policies.push_back(load_checkpoint(dir + "/" + cells[3]));
  }
  return reg;
}

ShapeLadder make_testbed_ladder() {
  ShapeLadder ladder;
  // easy, hard, easy, easy, hard, medium: the two hard shapes exceed the
  // action bound and stay unsolvable, the target does not.
  const double gains[] = {0.2, 2.0, 0.3, 0.35, 2.0, 0.8};
  int id = 0;
  for (double g : gains) {
    ladder.names.push_back("Testbed(" + std::to_string(id++) + ")");
    ladder.factories.push_back(
        [g]() { return std::make_unique<TestbedEnv>(g); });
  }
  return ladder;
}

}  // namespace manip
