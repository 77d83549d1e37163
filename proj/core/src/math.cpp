#include "manip/math.hpp"

namespace manip {

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * M_PI;
  a = std::fmod(a, two_pi);
  if (a <= -M_PI) a += two_pi;
  if (a > M_PI) a -= two_pi;
  return a;
}

Vec2 closest_point_on_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  Vec2 ab = b - a;
  double denom = ab.length_sq();
  if (denom <= 0.0) return a;
  double t = clamp((p - a).dot(ab) / denom, 0.0, 1.0);
  return a + ab * t;
}

double closest_points_segment_segment(const Vec2& p1, const Vec2& q1,
                                      const Vec2& p2, const Vec2& q2,
                                      Vec2& c1, Vec2& c2) {
  // Ericson, Real-Time Collision Detection, 5.1.9.
  Vec2 d1 = q1 - p1;
  Vec2 d2 = q2 - p2;
  Vec2 r = p1 - p2;
  double a = d1.length_sq();
  double e = d2.length_sq();
  double f = d2.dot(r);
  double s = 0.0, t = 0.0;

  if (a <= 0.0 && e <= 0.0) {
    c1 = p1;
    c2 = p2;
    return (c1 - c2).length_sq();
  }
  if (a <= 0.0) {
    t = clamp(f / e, 0.0, 1.0);
  } else {
    double c = d1.dot(r);
    if (e <= 0.0) {
      s = clamp(-c / a, 0.0, 1.0);
    } else {
      double b = d1.dot(d2);
      double denom = a * e - b * b;
      if (denom > 0.0) {
        s = clamp((b * f - c * e) / denom, 0.0, 1.0);
      }
      t = b * s + f;
      if (t < 0.0) {
        t = 0.0;
        s = clamp(-c / a, 0.0, 1.0);
      } else if (t > e) {
        t = 1.0;
        s = clamp((b - c) / a, 0.0, 1.0);
      } else {
        t /= e;
      }
    }
  }
  c1 = p1 + d1 * s;
  c2 = p2 + d2 * t;
  return (c1 - c2).length_sq();
}

}  // namespace manip
