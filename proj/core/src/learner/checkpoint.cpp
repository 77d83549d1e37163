#include "manip/learner/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace manip {

namespace {

void emit_vector(std::ofstream& out, const char* tag,
                 const std::vector<double>& v) {
  out << tag << " " << v.size();
  char buf[64];
  for (double x : v) {
    std::snprintf(buf, sizeof(buf), " %.17g", x);
    out << buf;
  }
  out << "\n";
}

std::vector<double> read_vector(std::istringstream& ls, const std::string& path) {
  size_t n;
  if (!(ls >> n)) throw CheckpointError(path + ": bad vector header");
  std::vector<double> v(n);
  for (size_t i = 0; i < n; ++i) {
    if (!(ls >> v[i])) throw CheckpointError(path + ": truncated vector");
  }
  return v;
}

void emit_topology(std::ofstream& out, const char* tag, const Mlp& net) {
  out << tag << " " << net.input_dim() << " " << net.hidden().size();
  for (int h : net.hidden()) out << " " << h;
  out << " " << net.output_dim() << "\n";
}

Mlp read_topology(std::istringstream& ls, const std::string& path) {
  int input, output;
  size_t nh;
  if (!(ls >> input >> nh)) throw CheckpointError(path + ": bad topology");
  std::vector<int> hidden(nh);
  for (size_t i = 0; i < nh; ++i) {
    if (!(ls >> hidden[i])) throw CheckpointError(path + ": bad topology");
  }
  if (!(ls >> output)) throw CheckpointError(path + ": bad topology");
  return Mlp(input, hidden, output);
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw CheckpointError("cannot write checkpoint: " + path);
  emit_topology(out, "policy", ckpt.policy.net);
  emit_vector(out, "policy_params", ckpt.policy.net.params);
  emit_vector(out, "log_std", ckpt.policy.log_std);
  emit_topology(out, "value", ckpt.value);
  emit_vector(out, "value_params", ckpt.value.params);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", ckpt.obs_filter.count());
  out << "filter_count " << buf << "\n";
  emit_vector(out, "filter_mean", ckpt.obs_filter.mean());
  emit_vector(out, "filter_m2", ckpt.obs_filter.m2());
  out << "filter_frozen " << (ckpt.obs_filter.frozen ? 1 : 0) << "\n";
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CheckpointError("cannot open checkpoint: " + path);
  Checkpoint ckpt;
  double filter_count = 0.0;
  std::vector<double> filter_mean, filter_m2;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "policy") {
      ckpt.policy.net = read_topology(ls, path);
    } else if (tag == "policy_params") {
      std::vector<double> p = read_vector(ls, path);
      if (p.size() != ckpt.policy.net.params.size()) {
        throw CheckpointError(path + ": policy parameter count mismatch");
      }
      ckpt.policy.net.params = std::move(p);
    } else if (tag == "log_std") {
      ckpt.policy.log_std = read_vector(ls, path);
    } else if (tag == "value") {
      ckpt.value = read_topology(ls, path);
    } else if (tag == "value_params") {
      std::vector<double> p = read_vector(ls, path);
      if (p.size() != ckpt.value.params.size()) {
        throw CheckpointError(path + ": value parameter count mismatch");
      }
      ckpt.value.params = std::move(p);
    } else if (tag == "filter_count") {
      ls >> filter_count;
    } else if (tag == "filter_mean") {
      filter_mean = read_vector(ls, path);
    } else if (tag == "filter_m2") {
      filter_m2 = read_vector(ls, path);
    } else if (tag == "filter_frozen") {
      int frozen = 0;
      ls >> frozen;
      ckpt.obs_filter.frozen = frozen != 0;
    } else {
      throw CheckpointError(path + ": unknown tag '" + tag + "'");
    }
  }
  if (ckpt.policy.net.param_count() == 0) {
    throw CheckpointError(path + ": missing policy");
  }
  ckpt.obs_filter.resize(static_cast<int>(filter_mean.size()));
  ckpt.obs_filter.set_stats(filter_count, std::move(filter_mean),
                            std::move(filter_m2));
  return ckpt;
}

}  // namespace manip
