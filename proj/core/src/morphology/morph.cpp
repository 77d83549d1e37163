#include "manip/morphology/morph.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace manip {

Vec2 project_to_surface(const Vec2& p, const Mesh2& source) {
  int n = source.size();
  Vec2 best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    Vec2 c = closest_point_on_segment(p, source.vertices[i], source.vertices[(i + 1) % n]);
    double d2 = (c - p).length_sq();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = c;
    }
  }
  return best;
}

Mesh2 morph(const Mesh2& source, const Mesh2& target, double t) {
  if (t < 0.0 || t > 1.0) throw MorphError("morph parameter outside [0, 1]");
  Mesh2 out;
  char label[64];
  if (t == 0.0) {
    std::snprintf(label, sizeof(label), "%s(0.0)", source.name.c_str());
  } else if (t == 1.0) {
    std::snprintf(label, sizeof(label), "%s(1.0)", target.name.c_str());
  } else {
    std::snprintf(label, sizeof(label), "Morph(%g)", t);
  }
  out.name = label;
  out.vertices.reserve(target.vertices.size());
  for (const Vec2& v : target.vertices) {
    if (t == 1.0) {
      out.vertices.push_back(v);
      continue;
    }
    Vec2 anchor = project_to_surface(v, source);
    out.vertices.push_back(anchor * (1.0 - t) + v * t);
  }
  if (is_self_intersecting(out.vertices)) {
    throw MorphError("morph degenerate (self-intersecting) at t=" + std::to_string(t));
  }
  return out;
}

MorphFamily make_morph_family(const Mesh2& source, const Mesh2& target,
                              std::vector<double> ts, double density) {
  validate_mesh(source);
  validate_mesh(target);
  if (ts.empty()) ts = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  for (size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] < 0.0 || ts[i] > 1.0 || (i > 0 && ts[i] <= ts[i - 1])) {
      throw MorphError("ts must be strictly increasing within [0, 1]");
    }
  }
  MorphFamily fam;
  fam.source = source;
  fam.target = target;
  fam.ts = ts;
  for (double t : ts) {
    Mesh2 shape = morph(source, target, t);
    fam.decompositions.push_back(convex_decompose(shape, density));
    fam.shapes.push_back(std::move(shape));
  }
  return fam;
}

MorphFamily load_morph_family(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw MorphError("cannot open morph manifest: " + manifest_path);
  std::string dir;
  auto slash = manifest_path.find_last_of('/');
  if (slash != std::string::npos) dir = manifest_path.substr(0, slash + 1);

  Mesh2 source, target;
  bool have_source = false, have_target = false;
  std::vector<double> ts;
  double density = 1.0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "source") {
      std::string path;
      ls >> path;
      source = load_mesh(dir + path);
      have_source = true;
    } else if (tag == "target") {
      std::string path;
      ls >> path;
      target = load_mesh(dir + path);
      have_target = true;
    } else if (tag == "density") {
      ls >> density;
    } else if (tag == "t") {
      double t;
      ls >> t;
      ts.push_back(t);
    } else {
      throw MorphError(manifest_path + ":" + std::to_string(lineno) +
                       ": unknown tag '" + tag + "'");
    }
  }
  if (!have_source || !have_target) {
    throw MorphError(manifest_path + ": manifest needs both source and target");
  }
  return make_morph_family(source, target, ts, density);
}

}  // namespace manip
