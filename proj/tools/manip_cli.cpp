// Command-line front end: reference generation, training, curricula,
// baselines, evaluation, perturbation studies, and SVG plotting.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "manip/curriculum/scheduler.hpp"
#include "manip/harness/config.hpp"
#include "manip/harness/evaluation.hpp"
#include "manip/harness/manifest.hpp"
#include "manip/harness/scene.hpp"
#include "manip/harness/svg.hpp"
#include "manip/imitation/script.hpp"
#include "manip/morphology/morph.hpp"

namespace {

using namespace manip;

namespace fs = std::filesystem;

struct Experiment {
  IniConfig cfg;
  std::string base_dir;
  SceneTemplate scene;
};

Experiment load_experiment(const std::string& config_path) {
  Experiment exp;
  exp.cfg = IniConfig::load(config_path);
  exp.base_dir = fs::path(config_path).parent_path().string();
  if (exp.cfg.has("experiment", "scene")) {
    fs::path p(exp.cfg.get_str("experiment", "scene"));
    if (p.is_relative()) p = exp.base_dir / p;
    exp.scene = load_scene_file(p.string());
  } else {
    exp.scene = load_scene(exp.cfg, exp.base_dir);
  }
  return exp;
}

RewardConfig parse_reward(const IniConfig& cfg) {
  RewardConfig r;
  r.w_od = cfg.get_double("reward", "w_od", r.w_od);
  r.w_or = cfg.get_double("reward", "w_or", r.w_or);
  r.w_hd = cfg.get_double("reward", "w_hd", r.w_hd);
  r.w_hr = cfg.get_double("reward", "w_hr", r.w_hr);
  r.w_hj = cfg.get_double("reward", "w_hj", r.w_hj);
  r.k_od = cfg.get_double("reward", "k_od", r.k_od);
  r.k_or = cfg.get_double("reward", "k_or", r.k_or);
  r.k_hd = cfg.get_double("reward", "k_hd", r.k_hd);
  r.k_hr = cfg.get_double("reward", "k_hr", r.k_hr);
  r.k_hj = cfg.get_double("reward", "k_hj", r.k_hj);
  return r;
}

TerminationThresholds parse_termination(const IniConfig& cfg) {
  TerminationThresholds t;
  t.d_thr = cfg.get_double("termination", "d_thr", t.d_thr);
  t.phi_thr = cfg.get_double("termination", "phi_thr", t.phi_thr);
  return t;
}

ActionConfig parse_action(const IniConfig& cfg) {
  ActionConfig a;
  a.pos_bound = cfg.get_double("action", "pos_bound", a.pos_bound);
  a.angle_bound = cfg.get_double("action", "angle_bound", a.angle_bound);
  a.alpha = cfg.get_double("action", "alpha", a.alpha);
  return a;
}

PpoConfig parse_ppo(const IniConfig& cfg) {
  PpoConfig p;
  if (cfg.has("ppo", "hidden")) {
    p.hidden.clear();
    for (double h : cfg.get_list("ppo", "hidden")) {
      p.hidden.push_back(static_cast<int>(h));
    }
  }
  p.log_std_init = cfg.get_double("ppo", "log_std_init", p.log_std_init);
  p.clip_eps = cfg.get_double("ppo", "clip_eps", p.clip_eps);
  p.epochs = cfg.get_int("ppo", "epochs", p.epochs);
  p.minibatch = cfg.get_int("ppo", "minibatch", p.minibatch);
  p.lr = cfg.get_double("ppo", "lr", p.lr);
  p.lr_decay = cfg.get_bool("ppo", "lr_decay", p.lr_decay);
  p.samples_per_iter = cfg.get_int("ppo", "samples_per_iter", p.samples_per_iter);
  p.iterations = cfg.get_int("ppo", "iterations", p.iterations);
  p.entropy_coef = cfg.get_double("ppo", "entropy_coef", p.entropy_coef);
  p.max_kl = cfg.get_double("ppo", "max_kl", p.max_kl);
  p.n_workers = cfg.get_int("ppo", "workers", p.n_workers);
  p.gae.gamma = cfg.get_double("ppo", "gamma", p.gae.gamma);
  p.gae.lambda = cfg.get_double("ppo", "lambda", p.gae.lambda);
  return p;
}

CurriculumConfig parse_curriculum(const IniConfig& cfg) {
  CurriculumConfig c;
  c.update_interval = cfg.get_int("curriculum", "update_interval", c.update_interval);
  c.threshold = cfg.get_double("curriculum", "threshold", c.threshold);
  c.total_iterations =
      cfg.get_int("curriculum", "total_iterations", c.total_iterations);
  c.eval_rollouts = cfg.get_int("curriculum", "eval_rollouts", c.eval_rollouts);
  c.starvation_limit =
      cfg.get_int("curriculum", "starvation_limit", c.starvation_limit);
  return c;
}

ScriptSpec resolve_script(const Experiment& exp) {
  std::string spec = exp.cfg.get_str("script", "kind", "rotate");
  double duration = exp.cfg.get_double("script", "duration", 4.0);
  if (spec == "hold") return make_hold_script(exp.scene, duration);
  if (spec == "rotate") {
    double angle = exp.cfg.get_double("script", "angle", M_PI / 2.0);
    return make_rotate_script(exp.scene, angle, duration);
  }
  fs::path p(spec);
  if (p.is_relative()) p = exp.base_dir / p;
  return load_script(p.string());
}

ReferenceClip resolve_clip(const Experiment& exp) {
  if (exp.cfg.has("experiment", "clip")) {
    fs::path p(exp.cfg.get_str("experiment", "clip"));
    if (p.is_relative()) p = exp.base_dir / p;
    return load_clip(p.string());
  }
  return generate_reference(resolve_script(exp), exp.scene);
}

EvalSetup make_setup(const Experiment& exp) {
  EvalSetup setup;
  setup.scene = exp.scene;
  setup.clip = resolve_clip(exp);
  setup.reward = parse_reward(exp.cfg);
  setup.termination = parse_termination(exp.cfg);
  setup.action = parse_action(exp.cfg);
  return setup;
}

EnvFactory setup_factory(const EvalSetup& setup) {
  return [setup]() -> std::unique_ptr<Env> {
    return std::make_unique<ManipulationEnv>(setup.scene, setup.clip,
                                             setup.reward, setup.termination,
                                             setup.action);
  };
}

// Morph ladder: per-shape scene + regenerated reference clip.
ShapeLadder make_morph_ladder(const Experiment& exp) {
  Mesh2 source = resolve_mesh(exp.cfg.get_str("morph", "source"), exp.base_dir);
  Mesh2 target = resolve_mesh(exp.cfg.get_str("morph", "target"), exp.base_dir);
  double density = exp.cfg.get_double("object", "density", 600.0);
  std::vector<double> ts{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  if (exp.cfg.has("morph", "ts")) ts = exp.cfg.get_list("morph", "ts");
  MorphFamily family = make_morph_family(source, target, ts, density);

  RewardConfig reward = parse_reward(exp.cfg);
  TerminationThresholds term = parse_termination(exp.cfg);
  ActionConfig action = parse_action(exp.cfg);

  ShapeLadder ladder;
  for (size_t i = 0; i < family.shapes.size(); ++i) {
    Experiment shape_exp = exp;
    set_scene_object(shape_exp.scene, family.shapes[i], density);
    ReferenceClip clip = generate_reference(resolve_script(shape_exp),
                                            shape_exp.scene);
    ladder.names.push_back(family.shapes[i].name);
    SceneTemplate scene = shape_exp.scene;
    ladder.factories.push_back([scene, clip, reward, term,
                                action]() -> std::unique_ptr<Env> {
      return std::make_unique<ManipulationEnv>(scene, clip, reward, term,
                                               action);
    });
  }
  return ladder;
}

ShapeLadder resolve_ladder(const Experiment& exp) {
  std::string family = exp.cfg.get_str("curriculum", "family", "morph");
  if (family == "testbed") return make_testbed_ladder();
  if (family == "morph") return make_morph_ladder(exp);
  throw ConfigError("unknown curriculum family '" + family + "'");
}

void write_run_manifest(const std::string& out_dir,
                        const std::string& config_path, uint64_t seed,
                        const std::string& command) {
  std::vector<std::pair<std::string, std::string>> entries;
  entries.emplace_back("command", command);
  entries.emplace_back("config", config_path);
  entries.emplace_back("config_hash", hash_hex(file_hash(config_path)));
  entries.emplace_back("seed", std::to_string(seed));
  write_manifest(entries, out_dir + "/manifest.txt");
}

std::string out_dir_for(const Experiment& exp, const std::string& flag_out) {
  std::string dir = flag_out.empty()
                        ? exp.cfg.get_str("experiment", "out", "out")
                        : flag_out;
  fs::create_directories(dir);
  return dir;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar in-hand manipulation: imitation training and greedy "
               "shape curricula"};
  app.require_subcommand(1);

  std::string config_path, out_flag, checkpoint_path, csv_path, svg_path;
  std::string mode = "greedy", kind = "direct-target", eval_mode = "stochastic";
  uint64_t seed = 0;
  int rollouts = 500;
  double force = 8.0, duration = 0.25, mass_scale = 1.0, friction_scale = 1.0;

  auto add_common = [&](CLI::App* sub, bool needs_config = true) {
    if (needs_config) {
      sub->add_option("--config", config_path, "experiment config (INI)")
          ->required();
    }
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--out", out_flag, "output directory");
  };

  CLI::App* genref = app.add_subcommand("gen-ref", "generate a reference clip");
  add_common(genref);
  CLI::App* train = app.add_subcommand("train", "PPO on a single shape");
  add_common(train);
  CLI::App* curriculum =
      app.add_subcommand("curriculum", "greedy or naive shape curriculum");
  add_common(curriculum);
  curriculum->add_option("--mode", mode, "greedy|naive")
      ->check(CLI::IsMember({"greedy", "naive"}));
  CLI::App* baseline = app.add_subcommand("baseline", "joint-training baselines");
  add_common(baseline);
  baseline->add_option("--kind", kind, "baseline kind")
      ->check(CLI::IsMember(
          {"direct-target", "source-plus-target", "all-morphs"}));
  CLI::App* evalc = app.add_subcommand("eval", "evaluate a checkpoint");
  add_common(evalc);
  evalc->add_option("--checkpoint", checkpoint_path, "policy checkpoint")
      ->required();
  evalc->add_option("--rollouts", rollouts, "episode count");
  evalc->add_option("--mode", eval_mode, "stochastic|deterministic")
      ->check(CLI::IsMember({"stochastic", "deterministic"}));
  evalc->add_option("--mass-scale", mass_scale, "object mass scale");
  evalc->add_option("--friction-scale", friction_scale, "friction scale");
  CLI::App* perturb =
      app.add_subcommand("perturb", "evaluate under fingertip forces");
  add_common(perturb);
  perturb->add_option("--checkpoint", checkpoint_path, "policy checkpoint")
      ->required();
  perturb->add_option("--rollouts", rollouts, "episode count");
  perturb->add_option("--force", force, "force magnitude, N");
  perturb->add_option("--duration", duration, "window length, s");
  CLI::App* plot = app.add_subcommand("plot", "render a CSV trace to SVG");
  plot->add_option("--csv", csv_path, "input CSV")->required();
  plot->add_option("--svg", svg_path, "output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (plot->parsed()) {
      plot_csv(csv_path, svg_path);
      std::cout << "wrote " << svg_path << "\n";
      return 0;
    }

    Experiment exp = load_experiment(config_path);
    std::string dir = out_dir_for(exp, out_flag);

    if (genref->parsed()) {
      ReferenceClip clip = generate_reference(resolve_script(exp), exp.scene);
      std::string path = dir + "/reference.clip";
      save_clip(clip, path);
      write_run_manifest(dir, config_path, seed, "gen-ref");
      std::cout << "wrote " << path << " (" << clip.frames.size()
                << " frames)\n";
      return 0;
    }

    if (train->parsed()) {
      EvalSetup setup = make_setup(exp);
      PpoConfig ppo = parse_ppo(exp.cfg);
      PpoTrainer trainer(setup_factory(setup), ppo, seed);
      for (int i = 0; i < ppo.iterations; ++i) {
        PpoStats s = trainer.iterate();
        std::printf("iter %4d  return %8.2f  length %6.1f  kl %.4f\n",
                    s.iteration, s.mean_return, s.mean_length, s.kl);
      }
      save_checkpoint(trainer.snapshot(), dir + "/policy.ckpt");
      write_training_log(trainer.history, dir + "/training.csv");
      write_run_manifest(dir, config_path, seed, "train");
      std::cout << "wrote " << dir << "/policy.ckpt\n";
      return 0;
    }

    if (curriculum->parsed()) {
      ShapeLadder ladder = resolve_ladder(exp);
      CurriculumConfig ccfg = parse_curriculum(exp.cfg);
      PpoConfig ppo = parse_ppo(exp.cfg);
      std::unique_ptr<Checkpoint> source;
      if (exp.cfg.has("curriculum", "source_checkpoint")) {
        fs::path p(exp.cfg.get_str("curriculum", "source_checkpoint"));
        if (p.is_relative()) p = exp.base_dir / p;
        source = std::make_unique<Checkpoint>(load_checkpoint(p.string()));
      }
      CurriculumResult result =
          mode == "greedy"
              ? run_greedy(ladder, ccfg, ppo, seed, source.get())
              : run_naive(ladder, ccfg, ppo, seed, source.get());
      save_trace(result.trace, ladder.size(), ccfg.threshold,
                 dir + "/trace.csv");
      save_registry(result.registry, dir + "/registry");
      write_run_manifest(dir, config_path, seed, "curriculum --mode " + mode);
      int target = ladder.size() - 1;
      std::printf("target %s: score %.3f (first success at iteration %d)\n",
                  ladder.names[target].c_str(),
                  result.registry.scores[target],
                  result.registry.first_success[target]);
      return 0;
    }

    if (baseline->parsed()) {
      ShapeLadder ladder = resolve_ladder(exp);
      CurriculumConfig ccfg = parse_curriculum(exp.cfg);
      PpoConfig ppo = parse_ppo(exp.cfg);
      BaselineKind bk = kind == "direct-target"
                            ? BaselineKind::kDirectTarget
                            : kind == "source-plus-target"
                                  ? BaselineKind::kSourcePlusTarget
                                  : BaselineKind::kAllMorphs;
      BaselineResult result = run_baseline(bk, ladder, ccfg, ppo, seed);
      save_checkpoint(result.policy, dir + "/policy.ckpt");
      write_run_manifest(dir, config_path, seed, "baseline --kind " + kind);
      std::printf("%s: success=%d target goodness %.3f\n", kind.c_str(),
                  result.success ? 1 : 0, result.target_goodness);
      return 0;
    }

    // eval / perturb share setup.
    EvalSetup setup = make_setup(exp);
    Checkpoint ckpt = load_checkpoint(checkpoint_path);
    EvaluationReport report;
    std::string command;
    if (evalc->parsed()) {
      if (mass_scale != 1.0 || friction_scale != 1.0) {
        report = dynamics_variation_eval(ckpt, setup, mass_scale,
                                         friction_scale, rollouts, seed);
      } else {
        report = eval_policy(ckpt, setup, rollouts,
                             eval_mode == "stochastic"
                                 ? RolloutMode::kStochastic
                                 : RolloutMode::kDeterministic,
                             seed);
      }
      command = "eval";
    } else {
      report = perturb_eval(ckpt, setup, force, duration, rollouts, seed);
      command = "perturb";
    }
    save_report(report, dir + "/report.csv");
    write_run_manifest(dir, config_path, seed, command);
    std::printf("success %.1f%%  normalized return %.1f  mean length %.1f\n",
                100.0 * report.success_rate, report.mean_normalized_return,
                report.mean_length);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
