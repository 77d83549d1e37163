#ifndef MANIP_MORPHOLOGY_MORPH_HPP_
#define MANIP_MORPHOLOGY_MORPH_HPP_

#include <string>
#include <vector>

#include "manip/morphology/decompose.hpp"
#include "manip/morphology/mesh.hpp"

namespace manip {

struct MorphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closest point on the boundary of `source` to p, over all edges.
// Ties are broken toward the lowest edge index.
Vec2 project_to_surface(const Vec2& p, const Mesh2& source);

// Vertex-projection morph: each target vertex slides along the straight
// segment between its projection onto the source boundary (t=0) and its own
// position (t=1). Output has the target's vertex count.
// Throws MorphError if the result self-intersects.
Mesh2 morph(const Mesh2& source, const Mesh2& target, double t);

struct MorphFamily {
  Mesh2 source;
  Mesh2 target;
  std::vector<double> ts;      // strictly increasing in [0, 1]
  std::vector<Mesh2> shapes;   // one per t
  std::vector<ConvexDecomposition> decompositions;
};

// Default ts = {0, 0.2, 0.4, 0.6, 0.8, 1}.
MorphFamily make_morph_family(const Mesh2& source, const Mesh2& target,
                              std::vector<double> ts = {}, double density = 1.0);

// Manifest format: `source <mesh-file>`, `target <mesh-file>`,
// `density <d>`, `t <value>` per interpolation parameter. Mesh paths are
// resolved relative to the manifest's directory.
MorphFamily load_morph_family(const std::string& manifest_path);

}  // namespace manip

#endif  // MANIP_MORPHOLOGY_MORPH_HPP_
