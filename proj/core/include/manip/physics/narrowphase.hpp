#ifndef MANIP_PHYSICS_NARROWPHASE_HPP_
#define MANIP_PHYSICS_NARROWPHASE_HPP_

#include <variant>
#include <vector>

#include "manip/math.hpp"
#include "manip/morphology/decompose.hpp"

namespace manip {

// Capsule in body-local coordinates: segment [a, b] swept by radius.
// A disk is a capsule with a == b.
struct CapsuleShape {
  Vec2 a;
  Vec2 b;
  double radius = 0.0;
};

using CollisionPart = std::variant<CapsuleShape, ConvexPolygon>;

// World-space rounded convex hull: CCW core vertices plus a sweep radius.
// Capsule -> 2 verts, disk -> 1 vert, polygon -> n verts with radius 0.
struct RoundedHull {
  std::vector<Vec2> v;
  double r = 0.0;
};

RoundedHull to_world_hull(const CollisionPart& part, const Pose2& pose);

struct Contact {
  Vec2 position;
  Vec2 normal;          // unit, pushes shape A away from shape B
  double penetration = 0.0;
};

// Narrow phase for a pair of rounded convex hulls. Produces a one- or
// two-point manifold; empty when separated.
std::vector<Contact> collide(const RoundedHull& a, const RoundedHull& b);

struct ContactPoint {
  Vec2 position;
  Vec2 normal;  // from body_b into body_a
  double penetration = 0.0;
  int body_a = -1;
  int body_b = -1;
  double normal_impulse = 0.0;
  double tangent_impulse = 0.0;
};

// All contacts between two part lists placed at the given poses.
std::vector<ContactPoint> detect_contacts(const std::vector<CollisionPart>& parts_a,
                                          const Pose2& pose_a,
                                          const std::vector<CollisionPart>& parts_b,
                                          const Pose2& pose_b);

}  // namespace manip

#endif  // MANIP_PHYSICS_NARROWPHASE_HPP_
