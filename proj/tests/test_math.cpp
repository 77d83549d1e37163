#include <cmath>

#include "doctest.h"
#include "manip/math.hpp"
#include "manip/rng.hpp"

using namespace manip;

namespace {

// Angle difference by brute force: smallest |a - b + 2 pi k| over k.
double brute_angle_diff(double a, double b) {
  double best = a - b;
  for (int k = -4; k <= 4; ++k) {
    double cand = a - b + 2.0 * M_PI * k;
    if (std::abs(cand) < std::abs(best)) best = cand;
  }
  return best;
}

}  // namespace

TEST_SUITE("math") {

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_angle(-M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_angle(3.0 * M_PI) == doctest::Approx(M_PI));
  CHECK(wrap_angle(2.0 * M_PI + 0.25) == doctest::Approx(0.25));
  for (double a = -20.0; a <= 20.0; a += 0.37) {
    double w = wrap_angle(a);
    CHECK(w > -M_PI - 1e-15);
    CHECK(w <= M_PI + 1e-15);
    CHECK(std::remainder(w - a, 2.0 * M_PI) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("angle_diff equals the brute-force shortest difference") {
  for (double a = -7.0; a <= 7.0; a += 0.61) {
    for (double b = -7.0; b <= 7.0; b += 0.53) {
      CHECK(angle_diff(a, b) == doctest::Approx(brute_angle_diff(a, b)).epsilon(1e-12));
    }
  }
}

TEST_CASE("Pose2 transform round-trips") {
  Pose2 pose({0.3, -1.2}, 2.1);
  Vec2 local{0.05, -0.02};
  Vec2 world = pose.transform(local);
  Vec2 back = pose.inv_transform(world);
  CHECK(back.x == doctest::Approx(local.x).epsilon(1e-14));
  CHECK(back.y == doctest::Approx(local.y).epsilon(1e-14));
}

TEST_CASE("closest point on segment") {
  Vec2 a{0.0, 0.0}, b{1.0, 0.0};
  Vec2 mid = closest_point_on_segment({0.5, 3.0}, a, b);
  CHECK(mid.x == doctest::Approx(0.5));
  CHECK(mid.y == doctest::Approx(0.0));
  Vec2 clamped = closest_point_on_segment({-2.0, 1.0}, a, b);
  CHECK(clamped.x == doctest::Approx(0.0));
  CHECK(clamped.y == doctest::Approx(0.0));
}

TEST_CASE("rng is deterministic and reasonably uniform") {
  Rng r1(123), r2(123);
  for (int i = 0; i < 100; ++i) CHECK(r1.next_u32() == r2.next_u32());

  Rng r(99);
  double sum = 0.0;
  int n = 20000;
  for (int i = 0; i < n; ++i) {
    double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("rng normal has unit scale") {
  Rng r(7);
  double sum = 0.0, sq = 0.0;
  int n = 20000;
  for (int i = 0; i < n; ++i) {
    double z = r.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(sum / n == doctest::Approx(0.0).epsilon(0.05));
  CHECK(sq / n == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("hash_combine decorrelates nearby seeds") {
  CHECK(hash_combine(1, 2) != hash_combine(2, 1));
  CHECK(hash_combine(0, 0) != hash_combine(0, 1));
  // Streams from adjacent seeds should not collide pairwise.
  for (uint64_t s = 0; s < 64; ++s) {
    CHECK(hash_combine(s, 17) != hash_combine(s + 1, 17));
  }
}

}  // TEST_SUITE
