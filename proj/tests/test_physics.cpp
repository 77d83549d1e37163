#include <cmath>

#include "doctest.h"
#include "manip/physics/hand.hpp"
#include "manip/physics/narrowphase.hpp"
#include "manip/physics/stable_pd.hpp"
#include "manip/physics/world.hpp"
#include "manip/rng.hpp"

using namespace manip;

namespace {

int add_disk(SimWorld& world, double radius, double density, const Pose2& pose,
             const Vec2& vel = {}) {
  RigidBody b;
  b.pose = pose;
  b.lin_vel = vel;
  b.parts.push_back(CapsuleShape{{0, 0}, {0, 0}, radius});
  double m = density * M_PI * radius * radius;
  b.finalize_mass(m, 0.5 * m * radius * radius);
  return add_body(world, b);
}

int add_box(SimWorld& world, double half, double density, const Pose2& pose) {
  RigidBody b;
  b.pose = pose;
  ConvexPolygon poly;
  poly.verts = {{half, -half}, {half, half}, {-half, half}, {-half, -half}};
  b.parts.push_back(poly);
  double m = density * 4.0 * half * half;
  b.finalize_mass(m, m * (4.0 * half * half + 4.0 * half * half) / 12.0);
  return add_body(world, b);
}

}  // namespace

TEST_SUITE("physics") {

TEST_CASE("free fall is exact under semi-implicit Euler") {
  SimWorld world;
  int body = add_disk(world, 0.05, 100.0, Pose2(0, 1, 0));
  for (int i = 0; i < 600; ++i) step(world, {});
  CHECK(world.bodies[body].lin_vel.y == doctest::Approx(-9.81).epsilon(1e-7));
  CHECK(world.bodies[body].lin_vel.x == 0.0);
}

TEST_CASE("resting box stays within the penetration slop") {
  SimWorld world;
  add_static_box(world, 1.0, 0.0);
  int body = add_box(world, 0.05, 100.0, Pose2(0, 0.05, 0));
  double max_pen = 0.0;
  for (int i = 0; i < 5 * 600; ++i) {
    step(world, {});
    for (const ContactPoint& c : world.contacts) {
      max_pen = std::max(max_pen, c.penetration);
    }
  }
  CHECK(max_pen <= world.contact.penetration_slop + 1e-3);
  // And the box has not sunk through or bounced away.
  CHECK(world.bodies[body].pose.p.y == doctest::Approx(0.05).epsilon(0.02));
}

TEST_CASE("head-on elastic collision conserves momentum") {
  SimWorld world;
  world.gravity = {0.0, 0.0};
  world.contact.restitution = 1.0;
  int a = add_disk(world, 0.05, 100.0, Pose2(-0.2, 0, 0), {1.0, 0.0});
  int b = add_disk(world, 0.05, 100.0, Pose2(0.2, 0, 0), {-1.0, 0.0});
  double m = world.bodies[a].mass;
  double p0 = m * (world.bodies[a].lin_vel.x + world.bodies[b].lin_vel.x);
  for (int i = 0; i < 600; ++i) step(world, {});
  double p1 = m * (world.bodies[a].lin_vel.x + world.bodies[b].lin_vel.x);
  CHECK(std::abs(p1 - p0) <= 1e-6 * std::max(1.0, m * 2.0));
  // They must actually have collided and separated.
  CHECK(world.bodies[a].lin_vel.x < 0.0);
  CHECK(world.bodies[b].lin_vel.x > 0.0);
}

TEST_CASE("stable_pd_torque closed form") {
  // At the target with zero velocity the torque vanishes.
  CHECK(stable_pd_torque(1.2, 0.0, 1.2, 300.0, 20.0, 1.0 / 600.0) == 0.0);
  // Pure damping when kp = 0 (infinite-inertia form).
  CHECK(stable_pd_torque(0.5, 1.0, 0.5, 0.0, 7.0, 1.0 / 600.0) ==
        doctest::Approx(-7.0));
  // The predicted-position term acts even at q = target when moving.
  double dt = 1.0 / 600.0;
  CHECK(stable_pd_torque(0.0, 2.0, 0.0, 100.0, 0.0, dt) ==
        doctest::Approx(-100.0 * dt * 2.0));
}

TEST_CASE("stable PD bounded where explicit PD diverges") {
  // A light pendulum bob: inertia small enough that the explicit update is
  // outside the symplectic-Euler stability region at kp = 1000.
  const double inertia = 2.5e-4;
  const double kp = 1000.0;
  const double kd = 2.0 * std::sqrt(kp);
  const double dt = 1.0 / 600.0;
  const double amp = 0.5;

  auto run = [&](bool stable) {
    double q = 0.0, qdot = 0.0, max_q = 0.0;
    for (int i = 0; i < 6000; ++i) {
      double target = amp * std::sin(2.0 * M_PI * 0.5 * i * dt);
      double tau = stable
                       ? stable_pd_torque(q, qdot, target, kp, kd, dt, inertia)
                       : explicit_pd_torque(q, qdot, target, kp, kd, dt);
      qdot += tau / inertia * dt;
      q += qdot * dt;
      max_q = std::max(max_q, std::abs(q));
      if (max_q > 1e6) break;
    }
    return max_q;
  };

  CHECK(run(true) <= 2.0 * amp);
  CHECK(run(false) > 10.0);
}

TEST_CASE("forward kinematics analytic cases") {
  HandModel hand = make_two_finger_hand();
  JointState zero;
  zero.root_pose = Pose2(0, 0, 0);
  zero.q.assign(hand.joint_count(), 0.0);
  zero.qdot.assign(hand.joint_count(), 0.0);
  std::vector<Pose2> poses = hand.links.empty()
                                 ? std::vector<Pose2>{}
                                 : forward_kinematics(hand, zero);
  REQUIRE(static_cast<int>(poses.size()) == hand.link_count());
  // At q = 0 every link angle equals the accumulated rest angles of its chain.
  for (const auto& chain : hand.chains) {
    double angle = 0.0;
    int prev = 0;
    for (int link : chain) {
      for (const HandJoint& j : hand.joints) {
        if (j.child_link == link && j.parent_link == prev) angle += j.rest_angle;
      }
      CHECK(poses[link].angle == doctest::Approx(wrap_angle(angle)).epsilon(1e-12));
      prev = link;
    }
  }

  // Rigid-transform equivariance: rotating the root rotates every link pose.
  JointState rot = zero;
  rot.root_pose = Pose2(0.1, -0.2, M_PI / 2.0);
  std::vector<Pose2> rotated = forward_kinematics(hand, rot);
  Rot2 R(M_PI / 2.0);
  for (int i = 0; i < hand.link_count(); ++i) {
    Vec2 expect = rot.root_pose.p + R.rotate(poses[i].p);
    CHECK(rotated[i].p.x == doctest::Approx(expect.x).epsilon(1e-12));
    CHECK(rotated[i].p.y == doctest::Approx(expect.y).epsilon(1e-12));
    CHECK(angle_diff(rotated[i].angle, poses[i].angle) ==
          doctest::Approx(M_PI / 2.0).epsilon(1e-12));
  }

  // Single-link chain: tip at root + R(root + rest + q) * (L, 0).
  HandModel single;
  single.links.push_back({0.05, 0.01, 600.0});
  single.joints.push_back({0, 1, {0.06, 0.0}, 0.3});
  single.chains.push_back({1});
  JointState s;
  s.root_pose = Pose2(0.0, 0.0, 0.2);
  s.q = {0.4};
  s.qdot = {0.0};
  std::vector<Pose2> sp = forward_kinematics(single, s);
  Vec2 anchor = s.root_pose.transform({0.06, 0.0});
  Vec2 tip = anchor + Rot2(0.2 + 0.3 + 0.4).rotate({0.05, 0.0});
  Vec2 got = sp[1].transform({0.05, 0.0});
  CHECK(got.x == doctest::Approx(tip.x).epsilon(1e-12));
  CHECK(got.y == doctest::Approx(tip.y).epsilon(1e-12));
}

TEST_CASE("narrow phase: separated disks produce no contact") {
  std::vector<CollisionPart> a{CapsuleShape{{0, 0}, {0, 0}, 0.1}};
  std::vector<CollisionPart> b{CapsuleShape{{0, 0}, {0, 0}, 0.1}};
  auto contacts = detect_contacts(a, Pose2(0, 0, 0), b, Pose2(0.25, 0, 0));
  CHECK(contacts.empty());
}

TEST_CASE("narrow phase: capsule on polygon edge with known overlap") {
  const double delta = 0.003;
  std::vector<CollisionPart> cap{CapsuleShape{{-0.02, 0}, {0.02, 0}, 0.01}};
  ConvexPolygon box;
  box.verts = {{0.1, -0.15}, {0.1, -0.05}, {-0.1, -0.05}, {-0.1, -0.15}};
  std::vector<CollisionPart> poly{box};
  // Capsule bottom at -0.01; box top at -0.05 + 0.04 + delta offset.
  auto contacts =
      detect_contacts(cap, Pose2(0, 0, 0), poly, Pose2(0, 0.04 + delta, 0));
  REQUIRE(!contacts.empty());
  double max_pen = 0.0;
  for (const ContactPoint& c : contacts) max_pen = std::max(max_pen, c.penetration);
  CHECK(max_pen == doctest::Approx(delta).epsilon(1e-9));
}

TEST_CASE("narrow phase: mirrored configurations give mirrored contacts") {
  std::vector<CollisionPart> cap{CapsuleShape{{-0.03, 0}, {0.03, 0}, 0.01}};
  ConvexPolygon tri;
  tri.verts = {{0.05, 0.0}, {0.0, 0.08}, {-0.05, 0.0}};
  std::vector<CollisionPart> poly{tri};
  Pose2 right(0.04, 0.07, 0.3);
  Pose2 left(-0.04, 0.07, -0.3);
  auto c_right = detect_contacts(cap, right, poly, Pose2(0, 0, 0));
  auto c_left = detect_contacts(cap, left, poly, Pose2(0, 0, 0));
  REQUIRE(c_right.size() == c_left.size());
  REQUIRE(!c_right.empty());
  for (size_t i = 0; i < c_right.size(); ++i) {
    CHECK(c_left[i].position.x == doctest::Approx(-c_right[i].position.x).epsilon(1e-9));
    CHECK(c_left[i].position.y == doctest::Approx(c_right[i].position.y).epsilon(1e-9));
    CHECK(c_left[i].normal.x == doctest::Approx(-c_right[i].normal.x).epsilon(1e-9));
    CHECK(c_left[i].normal.y == doctest::Approx(c_right[i].normal.y).epsilon(1e-9));
    CHECK(c_left[i].penetration == doctest::Approx(c_right[i].penetration).epsilon(1e-9));
  }
}

TEST_CASE("friction cone and normal impulse sign over random steps") {
  Rng rng(2024);
  SimWorld world;
  add_static_box(world, 1.0, 0.0);
  int body = add_box(world, 0.04, 200.0, Pose2(0, 0.2, 0.3));
  long contacts_seen = 0;
  for (int i = 0; i < 2000; ++i) {
    // Kick the box around to exercise sliding, sticking, and impacts, and
    // drop it back when a kick launches it out of reach of the ground.
    if (i % 40 == 0) {
      world.bodies[body].lin_vel += Vec2{rng.uniform(-1.0, 1.0), rng.uniform(-0.5, 1.0)};
      world.bodies[body].ang_vel += rng.uniform(-5.0, 5.0);
      if (world.bodies[body].pose.p.y > 0.5) {
        world.bodies[body].pose.p.y = 0.2;
      }
    }
    step(world, {});
    for (const ContactPoint& c : world.contacts) {
      ++contacts_seen;
      CHECK(c.normal_impulse >= 0.0);
      CHECK(std::abs(c.tangent_impulse) <=
            world.contact.mu * c.normal_impulse + 1e-9);
    }
  }
  CHECK(contacts_seen > 500);
}

TEST_CASE("passive restitution-0 system never gains energy") {
  SimWorld world;
  add_static_box(world, 1.0, 0.0);
  int body = add_box(world, 0.04, 200.0, Pose2(0.0, 0.3, 0.4));
  const RigidBody& b = world.bodies[body];
  auto energy = [&] {
    double ke = 0.5 * b.mass * b.lin_vel.length_sq() +
                0.5 * b.inertia * b.ang_vel * b.ang_vel;
    double pe = b.mass * 9.81 * b.world_com().y;
    return ke + pe;
  };
  double prev = energy();
  for (int i = 0; i < 2 * 600; ++i) {
    step(world, {});
    double now = energy();
    CHECK(now <= prev + 1e-3);
    prev = now;
  }
}

TEST_CASE("stepping is deterministic") {
  auto run = [] {
    SimWorld world;
    add_static_box(world, 1.0, 0.0);
    HandModel hand = make_two_finger_hand();
    JointState init;
    init.root_pose = Pose2(0, 0.2, 0);
    init.q.assign(hand.joint_count(), 0.1);
    init.qdot.assign(hand.joint_count(), 0.0);
    spawn_hand(world, hand, init);
    add_box(world, 0.04, 200.0, Pose2(0.02, 0.4, 0.2));
    std::vector<double> act(3 + hand.joint_count(), 0.0);
    act[1] = 5.0;
    act[3] = 0.2;
    for (int i = 0; i < 600; ++i) step(world, act);
    return world;
  };
  SimWorld a = run();
  SimWorld b = run();
  REQUIRE(a.bodies.size() == b.bodies.size());
  for (size_t i = 0; i < a.bodies.size(); ++i) {
    CHECK(a.bodies[i].pose.p.x == b.bodies[i].pose.p.x);
    CHECK(a.bodies[i].pose.p.y == b.bodies[i].pose.p.y);
    CHECK(a.bodies[i].pose.angle == b.bodies[i].pose.angle);
    CHECK(a.bodies[i].lin_vel.x == b.bodies[i].lin_vel.x);
    CHECK(a.bodies[i].lin_vel.y == b.bodies[i].lin_vel.y);
    CHECK(a.bodies[i].ang_vel == b.bodies[i].ang_vel);
  }
}

TEST_CASE("contact sensor reads the supported weight") {
  SimWorld world;  // gravity on
  HandModel hand = make_two_finger_hand();
  JointState init;
  init.root_pose = Pose2(0, 0, 0);
  init.q.assign(hand.joint_count(), 0.0);
  init.qdot.assign(hand.joint_count(), 0.0);
  int h = spawn_hand(world, hand, init);
  set_hand_kinematic(world, h, true);

  // No contact: all sensors read zero.
  reset_contact_sensors(world);
  for (int i = 0; i < world.substeps_per_control; ++i) step(world, {});
  for (double f : read_contact_sensors(world, h)) CHECK(f == 0.0);

  // A small disk resting on the horizontal palm, clear of the curled fingers.
  int body = add_disk(world, 0.01, 200.0, Pose2(0.0, 0.015 + 0.011, 0.0));
  world.object_body = body;
  double mg = world.bodies[body].mass * 9.81;
  for (int i = 0; i < 600; ++i) step(world, {});  // settle
  reset_contact_sensors(world);
  for (int i = 0; i < world.substeps_per_control; ++i) step(world, {});
  std::vector<double> forces = read_contact_sensors(world, h);
  CHECK(forces[0] == doctest::Approx(mg).epsilon(0.05));
  int touched = 0;
  for (double f : forces) touched += f > 0.0;
  CHECK(touched == 1);
}

TEST_CASE("implicit PD motors settle a disturbed hand onto its targets") {
  SimWorld world;
  world.gravity = {0.0, 0.0};
  HandModel hand = make_two_finger_hand();
  JointState init;
  init.root_pose = Pose2(0, 0.1, 0);
  init.q.assign(hand.joint_count(), 0.2);
  init.qdot.assign(hand.joint_count(), 0.0);
  int h = spawn_hand(world, hand, init);
  JointState kicked = init;
  kicked.root_lin_vel = {0.5, -0.3};
  kicked.root_ang_vel = 2.0;
  kicked.qdot.assign(hand.joint_count(), 3.0);
  set_hand_state(world, h, kicked);
  PdTargets targets;
  targets.root = init.root_pose;
  targets.q = init.q;
  set_hand_pd_targets(world, h, targets);
  for (int i = 0; i < 2 * 600; ++i) step(world, {});
  REQUIRE(!world.diverged);
  JointState end = get_hand_state(world, h);
  CHECK((end.root_pose.p - init.root_pose.p).length() < 0.01);
  for (int j = 0; j < hand.joint_count(); ++j) {
    CHECK(std::abs(angle_diff(end.q[j], init.q[j])) < 0.05);
    CHECK(std::abs(end.qdot[j]) < 0.5);
  }
}

}  // TEST_SUITE
