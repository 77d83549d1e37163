#ifndef MANIP_MORPHOLOGY_DECOMPOSE_HPP_
#define MANIP_MORPHOLOGY_DECOMPOSE_HPP_

#include <vector>

#include "manip/morphology/mesh.hpp"

namespace manip {

// Convex CCW polygon. Also used as a collision part by the physics module.
struct ConvexPolygon {
  std::vector<Vec2> verts;
};

bool is_convex(const std::vector<Vec2>& loop, double tol = 1e-9);

struct MassProperties {
  double mass = 0.0;
  Vec2 com;
  double inertia = 0.0;  // about the COM
};

struct ConvexDecomposition {
  std::vector<ConvexPolygon> parts;
  double density = 1.0;  // kg/m^2
  MassProperties props;
};

// Ear-clipping triangulation of a simple CCW polygon.
std::vector<ConvexPolygon> triangulate(const Mesh2& mesh);

// Merge triangles into convex parts (Hertel-Mehlhorn): drop any shared
// diagonal whose removal keeps both incident corners convex.
std::vector<ConvexPolygon> hertel_mehlhorn(const std::vector<ConvexPolygon>& tris);

// Triangulate + merge. Rejects invalid or self-intersecting input.
ConvexDecomposition convex_decompose(const Mesh2& mesh, double density = 1.0);

// Exact polygon integrals aggregated over parts, about the combined COM.
MassProperties mass_properties(const std::vector<ConvexPolygon>& parts, double density);

}  // namespace manip

#endif  // MANIP_MORPHOLOGY_DECOMPOSE_HPP_
