#ifndef MANIP_HARNESS_SCENE_HPP_
#define MANIP_HARNESS_SCENE_HPP_

#include <string>

#include "manip/harness/config.hpp"
#include "manip/imitation/scene.hpp"
#include "manip/morphology/mesh.hpp"

namespace manip {

// Builds an object mesh from a `mesh = ...` value: either a file path
// (relative to `base_dir`) or a builtin spec:
//   box:<half_w>:<half_h>  ngon:<n>:<radius>
//   star:<points>:<outer>:<inner>  lshape:<size>
Mesh2 resolve_mesh(const std::string& spec, const std::string& base_dir);

// Loads a SceneTemplate from an INI scene description ([scene], [contact],
// [hand], [object] sections). Unknown keys fall back to defaults.
SceneTemplate load_scene(const IniConfig& cfg, const std::string& base_dir);
SceneTemplate load_scene_file(const std::string& path);

// Swaps in a different object, keeping every other scene setting; the grip
// initial state is re-solved for the new object's half extent.
void set_scene_object(SceneTemplate& scene, const Mesh2& mesh, double density,
                      double grip_squeeze = 1e-3);

}  // namespace manip

#endif  // MANIP_HARNESS_SCENE_HPP_
