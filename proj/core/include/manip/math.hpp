#ifndef MANIP_MATH_HPP_
#define MANIP_MATH_HPP_

#include <cmath>

namespace manip {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }

  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  // z component of the 3D cross product
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double length_sq() const { return x * x + y * y; }
  double length() const { return std::sqrt(length_sq()); }
  Vec2 perp() const { return {-y, x}; }
  Vec2 normalized() const {
    double l = length();
    return l > 0.0 ? Vec2{x / l, y / l} : Vec2{0.0, 0.0};
  }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

// Shortest signed angular difference a - b, wrapped to (-pi, pi].
inline double angle_diff(double a, double b) { return wrap_angle(a - b); }

// 2D rotation, stored as cos/sin.
struct Rot2 {
  double c = 1.0;
  double s = 0.0;

  Rot2() = default;
  explicit Rot2(double angle) : c(std::cos(angle)), s(std::sin(angle)) {}

  Vec2 rotate(const Vec2& v) const { return {c * v.x - s * v.y, s * v.x + c * v.y}; }
  Vec2 inv_rotate(const Vec2& v) const { return {c * v.x + s * v.y, -s * v.x + c * v.y}; }
};

// Planar pose: translation plus orientation, angle wrapped to (-pi, pi].
struct Pose2 {
  Vec2 p;
  double angle = 0.0;

  Pose2() = default;
  Pose2(Vec2 p_, double angle_) : p(p_), angle(wrap_angle(angle_)) {}
  Pose2(double x, double y, double angle_) : p(x, y), angle(wrap_angle(angle_)) {}

  Rot2 rot() const { return Rot2(angle); }
  Vec2 transform(const Vec2& local) const { return p + rot().rotate(local); }
  Vec2 inv_transform(const Vec2& world) const { return rot().inv_rotate(world - p); }
};

inline double clamp(double v, double lo, double hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

// Closest point on segment [a, b] to point p.
Vec2 closest_point_on_segment(const Vec2& p, const Vec2& a, const Vec2& b);

// Closest points between segments [p1,q1] and [p2,q2]; returns squared distance.
double closest_points_segment_segment(const Vec2& p1, const Vec2& q1,
                                      const Vec2& p2, const Vec2& q2,
                                      Vec2& c1, Vec2& c2);

}  // namespace manip

#endif  // MANIP_MATH_HPP_
