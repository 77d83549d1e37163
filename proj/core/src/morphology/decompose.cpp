#include "manip/morphology/decompose.hpp"

#include <algorithm>
#include <cmath>

namespace manip {

bool is_convex(const std::vector<Vec2>& loop, double tol) {
  int n = static_cast<int>(loop.size());
  if (n < 3) return false;
  for (int i = 0; i < n; ++i) {
    const Vec2& a = loop[i];
    const Vec2& b = loop[(i + 1) % n];
    const Vec2& c = loop[(i + 2) % n];
    if ((b - a).cross(c - b) < -tol) return false;
  }
  return true;
}

namespace {

double tri_area2(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b - a).cross(c - a);
}

// Closed test: a vertex exactly on a candidate ear's boundary must block the
// ear, or the clipped triangle overlaps the region across that vertex.
bool point_in_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  double d1 = tri_area2(a, b, p);
  double d2 = tri_area2(b, c, p);
  double d3 = tri_area2(c, a, p);
  return d1 >= 0 && d2 >= 0 && d3 >= 0;
}

std::vector<std::vector<int>> triangulate_indices(const std::vector<Vec2>& v,
                                                  const std::string& name) {
  std::vector<int> ring(v.size());
  for (size_t i = 0; i < ring.size(); ++i) ring[i] = static_cast<int>(i);

  std::vector<std::vector<int>> tris;
  int guard = 0;
  while (ring.size() > 3) {
    int n = static_cast<int>(ring.size());
    bool clipped = false;
    for (int i = 0; i < n; ++i) {
      int i0 = ring[(i + n - 1) % n];
      int i1 = ring[i];
      int i2 = ring[(i + 1) % n];
      if (tri_area2(v[i0], v[i1], v[i2]) <= 1e-14) continue;  // reflex or degenerate
      bool ear = true;
      for (int j : ring) {
        if (j == i0 || j == i1 || j == i2) continue;
        if (point_in_triangle(v[j], v[i0], v[i1], v[i2])) {
          ear = false;
          break;
        }
      }
      if (!ear) continue;
      tris.push_back({i0, i1, i2});
      ring.erase(ring.begin() + i);
      clipped = true;
      break;
    }
    if (!clipped) {
      // Collinear runs can block strict ears; clip the first non-reflex corner.
      for (int i = 0; i < n; ++i) {
        int i0 = ring[(i + n - 1) % n];
        int i1 = ring[i];
        int i2 = ring[(i + 1) % n];
        if (tri_area2(v[i0], v[i1], v[i2]) >= 0.0) {
          if (tri_area2(v[i0], v[i1], v[i2]) > 1e-14) tris.push_back({i0, i1, i2});
          ring.erase(ring.begin() + i);
          clipped = true;
          break;
        }
      }
    }
    if (!clipped || ++guard > 100000) {
      throw MeshError("triangulation failed for mesh '" + name + "'");
    }
  }
  if (ring.size() == 3 && tri_area2(v[ring[0]], v[ring[1]], v[ring[2]]) > 1e-14) {
    tris.push_back({ring[0], ring[1], ring[2]});
  }
  return tris;
}

bool convex_at(const std::vector<Vec2>& v, const std::vector<int>& poly, int at) {
  int n = static_cast<int>(poly.size());
  const Vec2& a = v[poly[(at + n - 1) % n]];
  const Vec2& b = v[poly[at]];
  const Vec2& c = v[poly[(at + 1) % n]];
  return (b - a).cross(c - b) >= -1e-12;
}

// Merge b into a across the directed edge (u, w) of a.
std::vector<int> merge_across(const std::vector<int>& a, const std::vector<int>& b,
                              int u, int w) {
  int na = static_cast<int>(a.size());
  int nb = static_cast<int>(b.size());
  int au = static_cast<int>(std::find(a.begin(), a.end(), u) - a.begin());
  int bw = static_cast<int>(std::find(b.begin(), b.end(), w) - b.begin());
  std::vector<int> merged;
  merged.reserve(na + nb - 2);
  // Walk a starting at w around to u, then b's interior path from u to w.
  for (int k = 0; k < na; ++k) merged.push_back(a[(au + 1 + k) % na]);
  for (int k = 1; k < nb - 1; ++k) merged.push_back(b[(bw + 1 + k) % nb]);
  return merged;
}

// Hertel-Mehlhorn merge loop: drop any diagonal whose removal keeps the
// union convex, until no diagonal can be dropped.
void merge_convex_partition(const std::vector<Vec2>& v,
                            std::vector<std::vector<int>>& polys) {
  bool merged_any = true;
  while (merged_any) {
    merged_any = false;
    for (size_t ia = 0; ia < polys.size() && !merged_any; ++ia) {
      const auto& a = polys[ia];
      int na = static_cast<int>(a.size());
      for (int e = 0; e < na && !merged_any; ++e) {
        int u = a[e];
        int w = a[(e + 1) % na];
        for (size_t ib = 0; ib < polys.size(); ++ib) {
          if (ib == ia) continue;
          const auto& b = polys[ib];
          int nb = static_cast<int>(b.size());
          bool shares = false;
          for (int f = 0; f < nb; ++f) {
            if (b[f] == w && b[(f + 1) % nb] == u) {
              shares = true;
              break;
            }
          }
          if (!shares) continue;
          std::vector<int> m = merge_across(a, b, u, w);
          bool ok = true;
          for (int k = 0; k < static_cast<int>(m.size()); ++k) {
            if (!convex_at(v, m, k)) {
              ok = false;
              break;
            }
          }
          if (ok) {
            polys[ia] = std::move(m);
            polys.erase(polys.begin() + static_cast<long>(ib));
            merged_any = true;
            break;
          }
        }
      }
    }
  }
}

std::vector<ConvexPolygon> gather(const std::vector<Vec2>& v,
                                  const std::vector<std::vector<int>>& polys) {
  std::vector<ConvexPolygon> out;
  for (const auto& poly : polys) {
    ConvexPolygon p;
    for (int i : poly) p.verts.push_back(v[i]);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::vector<ConvexPolygon> triangulate(const Mesh2& mesh) {
  validate_mesh(mesh);
  return gather(mesh.vertices, triangulate_indices(mesh.vertices, mesh.name));
}

ConvexDecomposition convex_decompose(const Mesh2& mesh, double density) {
  validate_mesh(mesh);
  auto polys = triangulate_indices(mesh.vertices, mesh.name);
  merge_convex_partition(mesh.vertices, polys);
  ConvexDecomposition d;
  d.density = density;
  d.parts = gather(mesh.vertices, polys);
  d.props = mass_properties(d.parts, density);
  return d;
}

std::vector<ConvexPolygon> hertel_mehlhorn(const std::vector<ConvexPolygon>& tris) {
  // Weld identical vertices into one index space, then merge.
  std::vector<Vec2> verts;
  auto weld = [&verts](const Vec2& p) {
    for (size_t i = 0; i < verts.size(); ++i) {
      if ((verts[i] - p).length_sq() < 1e-20) return static_cast<int>(i);
    }
    verts.push_back(p);
    return static_cast<int>(verts.size() - 1);
  };
  std::vector<std::vector<int>> polys;
  for (const auto& t : tris) {
    std::vector<int> idx;
    for (const Vec2& p : t.verts) idx.push_back(weld(p));
    polys.push_back(std::move(idx));
  }
  merge_convex_partition(verts, polys);
  return gather(verts, polys);
}

MassProperties mass_properties(const std::vector<ConvexPolygon>& parts, double density) {
  double mass = 0.0;
  Vec2 first_moment;
  double inertia_origin = 0.0;
  for (const auto& part : parts) {
    int n = static_cast<int>(part.verts.size());
    double area2 = 0.0;
    Vec2 c6;
    double j12 = 0.0;
    for (int i = 0; i < n; ++i) {
      const Vec2& p = part.verts[i];
      const Vec2& q = part.verts[(i + 1) % n];
      double cr = p.cross(q);
      area2 += cr;
      c6 += (p + q) * cr;
      j12 += cr * (p.dot(p) + p.dot(q) + q.dot(q));
    }
    double area = 0.5 * area2;
    mass += density * area;
    first_moment += density * (c6 * (1.0 / 6.0));
    inertia_origin += density * (j12 / 12.0);
  }
  MassProperties props;
  props.mass = mass;
  props.com = mass > 0.0 ? first_moment * (1.0 / mass) : Vec2{};
  props.inertia = inertia_origin - mass * props.com.length_sq();
  return props;
}

}  // namespace manip
