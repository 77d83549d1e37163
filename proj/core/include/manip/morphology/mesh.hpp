#ifndef MANIP_MORPHOLOGY_MESH_HPP_
#define MANIP_MORPHOLOGY_MESH_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "manip/math.hpp"

namespace manip {

// Simple closed polygon, vertices in counter-clockwise loop order.
struct Mesh2 {
  std::vector<Vec2> vertices;
  std::string name;

  int size() const { return static_cast<int>(vertices.size()); }
};

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shoelace signed area; positive for CCW loops.
double signed_area(const std::vector<Vec2>& loop);

bool is_self_intersecting(const std::vector<Vec2>& loop);

// Throws MeshError unless the mesh has >= 3 vertices, positive signed area
// and no self intersections.
void validate_mesh(const Mesh2& mesh);

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& loop);

// One `v x y` line per vertex, loop order.
Mesh2 load_mesh(const std::string& path);
void save_mesh(const Mesh2& mesh, const std::string& path);

// Canned shapes used by tests and the default experiment configs.
Mesh2 make_box(double half_w, double half_h, const std::string& name = "box");
Mesh2 make_ngon(int n, double radius, const std::string& name = "ngon");
Mesh2 make_star(int points, double outer_radius, double inner_radius,
                const std::string& name = "star");
Mesh2 make_lshape(double size, const std::string& name = "lshape");

}  // namespace manip

#endif  // MANIP_MORPHOLOGY_MESH_HPP_
