#include "manip/physics/narrowphase.hpp"

#include <cmath>
#include <limits>

namespace manip {

RoundedHull to_world_hull(const CollisionPart& part, const Pose2& pose) {
  RoundedHull h;
  if (const auto* cap = std::get_if<CapsuleShape>(&part)) {
    h.r = cap->radius;
    Vec2 a = pose.transform(cap->a);
    Vec2 b = pose.transform(cap->b);
    h.v.push_back(a);
    if ((b - a).length_sq() > 1e-20) h.v.push_back(b);
  } else {
    const auto& poly = std::get<ConvexPolygon>(part);
    h.r = 0.0;
    for (const Vec2& v : poly.verts) h.v.push_back(pose.transform(v));
  }
  return h;
}

namespace {

int face_count(const RoundedHull& h) {
  int n = static_cast<int>(h.v.size());
  if (n >= 3) return n;
  if (n == 2) return 2;  // both sides of the segment
  return 0;
}

// Outward normal and base vertex of face i.
void face_of(const RoundedHull& h, int i, Vec2& n, Vec2& f0, Vec2& f1) {
  int nv = static_cast<int>(h.v.size());
  if (nv >= 3) {
    f0 = h.v[i];
    f1 = h.v[(i + 1) % nv];
    Vec2 e = f1 - f0;
    n = Vec2{e.y, -e.x}.normalized();
  } else {
    // Segment: face 0 on one side, face 1 on the other.
    Vec2 e = h.v[1] - h.v[0];
    Vec2 base = Vec2{e.y, -e.x}.normalized();
    if (i == 0) {
      f0 = h.v[0];
      f1 = h.v[1];
      n = base;
    } else {
      f0 = h.v[1];
      f1 = h.v[0];
      n = -base;
    }
  }
}

// Largest distance of `other`'s core below any face of `ref`. Positive means
// the cores are separated along that face normal.
double max_face_separation(const RoundedHull& ref, const RoundedHull& other,
                           int& best_face) {
  double best = -std::numeric_limits<double>::infinity();
  best_face = -1;
  for (int i = 0; i < face_count(ref); ++i) {
    Vec2 n, f0, f1;
    face_of(ref, i, n, f0, f1);
    double sep = std::numeric_limits<double>::infinity();
    for (const Vec2& w : other.v) {
      sep = std::min(sep, n.dot(w - f0));
    }
    if (sep > best) {
      best = sep;
      best_face = i;
    }
  }
  return best;
}

double closest_core_points(const RoundedHull& a, const RoundedHull& b,
                           Vec2& ca, Vec2& cb) {
  auto edge = [](const RoundedHull& h, int i, Vec2& p, Vec2& q) {
    int n = static_cast<int>(h.v.size());
    if (n == 1) {
      p = q = h.v[0];
    } else if (n == 2) {
      p = h.v[0];
      q = h.v[1];
    } else {
      p = h.v[i];
      q = h.v[(i + 1) % n];
    }
  };
  int na = static_cast<int>(a.v.size()) >= 3 ? static_cast<int>(a.v.size()) : 1;
  int nb = static_cast<int>(b.v.size()) >= 3 ? static_cast<int>(b.v.size()) : 1;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < na; ++i) {
    Vec2 p1, q1;
    edge(a, i, p1, q1);
    for (int j = 0; j < nb; ++j) {
      Vec2 p2, q2, c1, c2;
      edge(b, j, p2, q2);
      double d2 = closest_points_segment_segment(p1, q1, p2, q2, c1, c2);
      if (d2 < best) {
        best = d2;
        ca = c1;
        cb = c2;
      }
    }
  }
  return std::sqrt(best);
}

// Reference-face clipping. `ref_is_a` tells which body the reference face
// belongs to so the returned normal always pushes A away from B.
std::vector<Contact> clip_manifold(const RoundedHull& ref, int face,
                                   const RoundedHull& inc, bool ref_is_a) {
  Vec2 n, f0, f1;
  face_of(ref, face, n, f0, f1);

  Vec2 i0, i1;
  if (inc.v.size() == 1) {
    i0 = i1 = inc.v[0];
  } else {
    int best = -1;
    double best_dot = std::numeric_limits<double>::infinity();
    for (int j = 0; j < face_count(inc); ++j) {
      Vec2 nj, a, b;
      face_of(inc, j, nj, a, b);
      double d = nj.dot(n);
      if (d < best_dot) {
        best_dot = d;
        best = j;
      }
    }
    Vec2 nj;
    face_of(inc, best, nj, i0, i1);
  }

  // Clip the incident edge to the reference face's side planes.
  Vec2 t = (f1 - f0).normalized();
  auto clip = [](Vec2& p, Vec2& q, const Vec2& axis, double offset) {
    double dp = axis.dot(p) - offset;
    double dq = axis.dot(q) - offset;
    if (dp < 0.0 && dq < 0.0) return false;
    if (dp < 0.0) p = p + (q - p) * (dp / (dp - dq));
    if (dq < 0.0) q = q + (p - q) * (dq / (dq - dp));
    return true;
  };
  if (t.length_sq() > 0.0 && (i1 - i0).length_sq() > 0.0) {
    if (!clip(i0, i1, t, t.dot(f0))) return {};
    if (!clip(i0, i1, -t, (-t).dot(f1))) return {};
  }

  std::vector<Contact> out;
  Vec2 pts[2] = {i0, i1};
  int count = (i1 - i0).length_sq() > 1e-20 ? 2 : 1;
  for (int k = 0; k < count; ++k) {
    double s = n.dot(pts[k] - f0);
    double pen = ref.r + inc.r - s;
    if (pen <= 0.0) continue;
    Contact c;
    c.penetration = pen;
    c.normal = ref_is_a ? -n : n;
    // Midpoint of the overlap interval along the face normal.
    c.position = pts[k] - n * (inc.r + 0.5 * (s - ref.r - inc.r));
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::vector<Contact> collide(const RoundedHull& a, const RoundedHull& b) {
  if (a.v.empty() || b.v.empty()) return {};

  // Disk vs disk.
  if (a.v.size() == 1 && b.v.size() == 1) {
    Vec2 d = a.v[0] - b.v[0];
    double dist = d.length();
    double pen = a.r + b.r - dist;
    if (pen <= 0.0) return {};
    Contact c;
    c.normal = dist > 1e-12 ? d * (1.0 / dist) : Vec2{1.0, 0.0};
    c.penetration = pen;
    c.position = b.v[0] + c.normal * (b.r - 0.5 * pen);
    return {c};
  }

  int face_a = -1, face_b = -1;
  double sep_a = max_face_separation(a, b, face_a);
  double sep_b = max_face_separation(b, a, face_b);
  bool ref_is_a = sep_a >= sep_b;
  double sep = ref_is_a ? sep_a : sep_b;
  if (sep > a.r + b.r) return {};

  if (sep > 1e-12) {
    Vec2 ca, cb;
    double d = closest_core_points(a, b, ca, cb);
    if (d >= a.r + b.r) return {};
    // Face-aligned shallow contact: the closest distance equals the face
    // separation, so a flat two-point manifold applies.
    if (d - sep < 1e-9 * (1.0 + d) && face_count(ref_is_a ? a : b) > 0) {
      auto m = ref_is_a ? clip_manifold(a, face_a, b, true)
                        : clip_manifold(b, face_b, a, false);
      if (!m.empty()) return m;
    }
    Contact c;
    c.normal = (ca - cb) * (1.0 / d);
    c.penetration = a.r + b.r - d;
    Vec2 surf_a = ca - c.normal * a.r;
    Vec2 surf_b = cb + c.normal * b.r;
    c.position = (surf_a + surf_b) * 0.5;
    return {c};
  }

  // Overlapping cores: SAT reference face + clipping.
  return ref_is_a ? clip_manifold(a, face_a, b, true)
                  : clip_manifold(b, face_b, a, false);
}

std::vector<ContactPoint> detect_contacts(const std::vector<CollisionPart>& parts_a,
                                          const Pose2& pose_a,
                                          const std::vector<CollisionPart>& parts_b,
                                          const Pose2& pose_b) {
  std::vector<ContactPoint> out;
  for (const auto& pa : parts_a) {
    RoundedHull ha = to_world_hull(pa, pose_a);
    for (const auto& pb : parts_b) {
      RoundedHull hb = to_world_hull(pb, pose_b);
      for (const Contact& c : collide(ha, hb)) {
        ContactPoint cp;
        cp.position = c.position;
        cp.normal = c.normal;
        cp.penetration = c.penetration;
        out.push_back(cp);
      }
    }
  }
  return out;
}

}  // namespace manip
