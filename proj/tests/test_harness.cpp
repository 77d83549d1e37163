#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "manip/harness/config.hpp"
#include "manip/harness/evaluation.hpp"
#include "manip/harness/manifest.hpp"
#include "manip/harness/scene.hpp"
#include "manip/harness/svg.hpp"
#include "manip/imitation/script.hpp"

using namespace manip;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Checkpoint random_checkpoint(int obs, int act, uint64_t seed) {
  Rng rng(seed);
  Checkpoint ckpt;
  ckpt.policy = GaussianPolicy(obs, {16}, act);
  ckpt.policy.net.init(rng);
  ckpt.value = Mlp(obs, {16}, 1);
  ckpt.value.init(rng, 1.0);
  ckpt.obs_filter.resize(obs);
  ckpt.obs_filter.frozen = true;
  return ckpt;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("ini parsing with comments and sections") {
  IniConfig cfg = IniConfig::parse(
      "# leading comment\n"
      "[train]\n"
      "iterations = 300   ; trailing comment\n"
      "lr = 3e-4\n"
      "decay = true\n"
      "\n"
      "[scene]\n"
      "mesh = box:0.04:0.04\n"
      "ts = 0 0.25 0.5 1\n");
  CHECK(cfg.get_int("train", "iterations", 0) == 300);
  CHECK(cfg.get_double("train", "lr", 0.0) == doctest::Approx(3e-4));
  CHECK(cfg.get_bool("train", "decay", false));
  CHECK(cfg.get_str("scene", "mesh") == "box:0.04:0.04");
  std::vector<double> ts = cfg.get_list("scene", "ts");
  REQUIRE(ts.size() == 4);
  CHECK(ts[1] == 0.25);
  CHECK(cfg.get_int("train", "missing", 7) == 7);
  CHECK(!cfg.has("train", "missing"));
}

TEST_CASE("ini errors carry the offending line") {
  try {
    IniConfig::parse("[ok]\nkey = 1\nnot-a-kv-line\n", "bad.ini");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    CHECK(msg.find("bad.ini") != std::string::npos);
    CHECK(msg.find("3") != std::string::npos);
  }
  CHECK_THROWS_AS(IniConfig::parse("orphan = 1\n"), ConfigError);
  // Missing required key names section and key.
  IniConfig cfg = IniConfig::parse("[a]\nx = 1\n");
  try {
    cfg.get_str("a", "y");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    CHECK(msg.find("a") != std::string::npos);
    CHECK(msg.find("y") != std::string::npos);
  }
}

TEST_CASE("resolve_mesh builtins") {
  Mesh2 box = resolve_mesh("box:0.04:0.03", ".");
  CHECK(box.size() == 4);
  CHECK(signed_area(box.vertices) == doctest::Approx(4 * 0.04 * 0.03));
  Mesh2 ngon = resolve_mesh("ngon:8:0.05", ".");
  CHECK(ngon.size() == 8);
  Mesh2 star = resolve_mesh("star:5:0.05:0.02", ".");
  CHECK(star.size() == 10);
  Mesh2 l = resolve_mesh("lshape:0.08", ".");
  CHECK(l.size() == 6);
  CHECK_THROWS_AS(resolve_mesh("blob:1:2", "."), ConfigError);
}

TEST_CASE("resolve_mesh loads files relative to the base directory") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "manip_resolve_test";
  fs::create_directories(dir);
  save_mesh(make_star(5, 0.05, 0.02, "disk"), (dir / "s.mesh").string());
  Mesh2 loaded = resolve_mesh("s.mesh", dir.string());
  CHECK(loaded.size() == 10);
  fs::remove_all(dir);
}

TEST_CASE("load_scene builds a working scene from ini text") {
  IniConfig cfg = IniConfig::parse(
      "[scene]\n"
      "gravity = 0 0\n"
      "[object]\n"
      "mesh = box:0.04:0.04\n"
      "density = 600\n"
      "[hand]\n"
      "grip_squeeze = 0.002\n"
      "[contact]\n"
      "mu = 1.5\n");
  SceneTemplate scene = load_scene(cfg, ".");
  CHECK(scene.hands.size() == 1);
  CHECK(scene.contact.mu == 1.5);
  CHECK(scene.total_joints() == 6);
  CHECK(scene.total_links() == 7);
  // The scene must instantiate and hold its grasp for a short clip.
  ReferenceClip clip = generate_reference(make_hold_script(scene, 0.5), scene);
  CHECK(!clip.frames.empty());
}

TEST_CASE("set_scene_object swaps the object and regrips") {
  IniConfig cfg = IniConfig::parse(
      "[object]\nmesh = box:0.04:0.04\ndensity = 600\n"
      "[hand]\ngrip_squeeze = 0.002\n");
  SceneTemplate scene = load_scene(cfg, ".");
  double before_mass = scene.object.props.mass;
  set_scene_object(scene, make_star(5, 0.05, 0.02), 600.0, 0.002);
  CHECK(scene.object.props.mass != before_mass);
  CHECK(scene.object.parts.size() > 1);
  ReferenceClip clip = generate_reference(make_hold_script(scene, 0.5), scene);
  CHECK(!clip.frames.empty());
}

TEST_CASE("fnv-1a content hash reference values") {
  // Standard FNV-1a 64-bit test vectors.
  CHECK(content_hash("") == 0xcbf29ce484222325ull);
  CHECK(content_hash("a") == 0xaf63dc4c8601ec8cull);
  CHECK(content_hash("foobar") == 0x85944171f73967e8ull);
  CHECK(hash_hex(0xcbf29ce484222325ull) == "cbf29ce484222325");
}

TEST_CASE("file_hash matches content_hash and manifests round-trip") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "manip_manifest_test";
  fs::create_directories(dir);
  std::string payload = "hello manifest\n";
  std::ofstream((dir / "in.txt").string(), std::ios::binary) << payload;
  CHECK(file_hash((dir / "in.txt").string()) == content_hash(payload));

  write_manifest({{"seed", "42"}, {"config", hash_hex(content_hash(payload))}},
                 (dir / "manifest.txt").string());
  std::string text = slurp((dir / "manifest.txt").string());
  CHECK(text.find("seed = 42") != std::string::npos);
  CHECK(text.find(hash_hex(content_hash(payload))) != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("svg chart is structurally sound") {
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "manip_chart.svg";
  SvgSeries s1{"alpha", {0, 1, 2, 3}, {0.0, 0.5, 0.25, 1.0}};
  SvgSeries s2{"beta", {0, 1, 2, 3}, {1.0, 0.75, 0.5, 0.0}};
  SvgChartOptions opt;
  opt.title = "test chart";
  write_svg_chart({s1, s2}, opt, path.string());
  std::string svg = slurp(path.string());
  fs::remove(path);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.rfind("</svg>") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("alpha") != std::string::npos);
  CHECK(svg.find("beta") != std::string::npos);
  CHECK(svg.find("test chart") != std::string::npos);
  CHECK(svg.find("nan") == std::string::npos);
}

TEST_CASE("plot_csv renders every numeric column") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "manip_plot_test";
  fs::create_directories(dir);
  std::ofstream((dir / "log.csv").string())
      << "iteration,return,kl\n0,1.5,0.01\n1,2.5,0.02\n2,3.0,0.015\n";
  plot_csv((dir / "log.csv").string(), (dir / "log.svg").string(), "training");
  std::string svg = slurp((dir / "log.svg").string());
  fs::remove_all(dir);
  CHECK(svg.find("return") != std::string::npos);
  CHECK(svg.find("kl") != std::string::npos);
  CHECK(svg.find("training") != std::string::npos);
}

TEST_CASE("evaluation report properties on the hold task") {
  IniConfig ini = IniConfig::parse(
      "[object]\nmesh = box:0.04:0.04\ndensity = 600\n"
      "[hand]\ngrip_squeeze = 0.002\n");
  EvalSetup setup;
  setup.scene = load_scene(ini, ".");
  setup.clip = generate_reference(make_hold_script(setup.scene, 1.0), setup.scene);

  ManipulationEnv probe(setup.scene, setup.clip);
  Checkpoint ckpt = random_checkpoint(probe.obs_dim(), probe.action_dim(), 3);
  EvaluationReport report =
      eval_policy(ckpt, setup, 4, RolloutMode::kDeterministic, 11);

  CHECK(report.rollouts == 4);
  CHECK(report.horizon == 30);
  REQUIRE(static_cast<int>(report.completion.size()) == report.horizon + 1);
  CHECK(report.completion[0] == 1.0);
  for (size_t t = 1; t < report.completion.size(); ++t) {
    CHECK(report.completion[t] <= report.completion[t - 1]);
  }
  CHECK(report.success_rate == report.completion.back());
  CHECK(report.mean_length <= report.horizon);
  CHECK(report.mean_goodness >= 0.0);
  CHECK(report.mean_goodness <= 1.0);
}

TEST_CASE("save_report output is byte deterministic") {
  namespace fs = std::filesystem;
  EvaluationReport report;
  report.rollouts = 2;
  report.horizon = 3;
  report.success_rate = 0.5;
  report.mean_normalized_return = 0.75;
  report.mean_length = 2.5;
  report.mean_goodness = 0.4;
  report.completion = {1.0, 1.0, 0.5, 0.5};
  fs::path a = fs::temp_directory_path() / "manip_report_a.csv";
  fs::path b = fs::temp_directory_path() / "manip_report_b.csv";
  save_report(report, a.string());
  save_report(report, b.string());
  std::string ta = slurp(a.string());
  CHECK(ta == slurp(b.string()));
  CHECK(ta.find("success_rate") != std::string::npos);
  CHECK(ta.find("0.5") != std::string::npos);
  fs::remove(a);
  fs::remove(b);
}

}  // TEST_SUITE
