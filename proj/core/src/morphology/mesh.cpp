#include "manip/morphology/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace manip {

double signed_area(const std::vector<Vec2>& loop) {
  double a = 0.0;
  int n = static_cast<int>(loop.size());
  for (int i = 0; i < n; ++i) {
    const Vec2& p = loop[i];
    const Vec2& q = loop[(i + 1) % n];
    a += p.cross(q);
  }
  return 0.5 * a;
}

namespace {

bool segments_properly_intersect(const Vec2& a, const Vec2& b,
                                 const Vec2& c, const Vec2& d) {
  auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    return (q - p).cross(r - p);
  };
  double o1 = orient(a, b, c);
  double o2 = orient(a, b, d);
  double o3 = orient(c, d, a);
  double o4 = orient(c, d, b);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) &&
         o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace

bool is_self_intersecting(const std::vector<Vec2>& loop) {
  int n = static_cast<int>(loop.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // Skip adjacent edges (they share a vertex).
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_properly_intersect(loop[i], loop[(i + 1) % n],
                                      loop[j], loop[(j + 1) % n])) {
        return true;
      }
    }
  }
  return false;
}

void validate_mesh(const Mesh2& mesh) {
  if (mesh.size() < 3) {
    throw MeshError("mesh '" + mesh.name + "': fewer than 3 vertices");
  }
  for (const Vec2& v : mesh.vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw MeshError("mesh '" + mesh.name + "': non-finite vertex");
    }
  }
  if (signed_area(mesh.vertices) <= 0.0) {
    throw MeshError("mesh '" + mesh.name + "': vertices must wind CCW");
  }
  if (is_self_intersecting(mesh.vertices)) {
    throw MeshError("mesh '" + mesh.name + "': self-intersecting loop");
  }
}

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& loop) {
  bool inside = false;
  int n = static_cast<int>(loop.size());
  for (int i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = loop[i];
    const Vec2& b = loop[j];
    if ((a.y > p.y) != (b.y > p.y) &&
        p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

Mesh2 load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file: " + path);
  Mesh2 mesh;
  mesh.name = path;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "name") {
      ls >> mesh.name;
    } else if (tag == "v") {
      double x, y;
      if (!(ls >> x >> y)) {
        throw MeshError(path + ":" + std::to_string(lineno) + ": bad vertex line");
      }
      mesh.vertices.push_back({x, y});
    } else {
      throw MeshError(path + ":" + std::to_string(lineno) + ": unknown tag '" + tag + "'");
    }
  }
  validate_mesh(mesh);
  return mesh;
}

void save_mesh(const Mesh2& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MeshError("cannot write mesh file: " + path);
  if (!mesh.name.empty()) out << "name " << mesh.name << "\n";
  char buf[96];
  for (const Vec2& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "v %.17g %.17g\n", v.x, v.y);
    out << buf;
  }
}

Mesh2 make_box(double half_w, double half_h, const std::string& name) {
  Mesh2 m;
  m.name = name;
  m.vertices = {{half_w, -half_h}, {half_w, half_h}, {-half_w, half_h}, {-half_w, -half_h}};
  return m;
}

Mesh2 make_ngon(int n, double radius, const std::string& name) {
  Mesh2 m;
  m.name = name;
  for (int i = 0; i < n; ++i) {
    double a = 2.0 * M_PI * i / n;
    m.vertices.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return m;
}

Mesh2 make_star(int points, double outer_radius, double inner_radius,
                const std::string& name) {
  Mesh2 m;
  m.name = name;
  for (int i = 0; i < points; ++i) {
    double a0 = 2.0 * M_PI * i / points;
    double a1 = a0 + M_PI / points;
    m.vertices.push_back({outer_radius * std::cos(a0), outer_radius * std::sin(a0)});
    m.vertices.push_back({inner_radius * std::cos(a1), inner_radius * std::sin(a1)});
  }
  return m;
}

Mesh2 make_lshape(double size, const std::string& name) {
  double s = size;
  Mesh2 m;
  m.name = name;
  m.vertices = {{0, 0}, {s, 0}, {s, s / 2}, {s / 2, s / 2}, {s / 2, s}, {0, s}};
  return m;
}

}  // namespace manip
