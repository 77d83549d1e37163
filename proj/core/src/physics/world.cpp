#include "manip/physics/world.hpp"

#include <cmath>
#include <stdexcept>

namespace manip {

void RigidBody::finalize_mass(double mass_, double inertia_) {
  mass = mass_;
  inertia = inertia_;
  if (kinematic || mass_ <= 0.0) {
    inv_mass = 0.0;
    inv_inertia = 0.0;
  } else {
    inv_mass = 1.0 / mass_;
    inv_inertia = inertia_ > 0.0 ? 1.0 / inertia_ : 0.0;
  }
}

int add_body(SimWorld& world, RigidBody body) {
  world.bodies.push_back(std::move(body));
  world.external_force.push_back({});
  world.external_torque.push_back(0.0);
  return static_cast<int>(world.bodies.size()) - 1;
}

int add_static_box(SimWorld& world, double half_w, double top, double thickness) {
  RigidBody ground;
  ground.kinematic = true;
  ConvexPolygon box;
  box.verts = {{half_w, top - thickness}, {half_w, top}, {-half_w, top}, {-half_w, top - thickness}};
  ground.parts.push_back(box);
  ground.finalize_mass(0.0, 0.0);
  return add_body(world, ground);
}

int add_decomposed_body(SimWorld& world, const ConvexDecomposition& decomp,
                        const Pose2& pose) {
  RigidBody body;
  body.pose = pose;
  body.local_com = decomp.props.com;
  for (const auto& part : decomp.parts) body.parts.push_back(part);
  body.finalize_mass(decomp.props.mass, decomp.props.inertia);
  return add_body(world, body);
}

double capsule_mass(const CapsuleShape& cap, double density) {
  double len = (cap.b - cap.a).length();
  return density * (2.0 * cap.radius * len + M_PI * cap.radius * cap.radius);
}

double capsule_inertia(const CapsuleShape& cap, double density) {
  double len = (cap.b - cap.a).length();
  double r = cap.radius;
  double m_rect = density * 2.0 * r * len;
  double i_rect = m_rect * (len * len + 4.0 * r * r) / 12.0;
  double m_caps = density * M_PI * r * r;
  double i_caps = m_caps * (0.5 * r * r + 0.25 * len * len);
  return i_rect + i_caps;
}

int spawn_hand(SimWorld& world, const HandModel& model, const JointState& state) {
  HandInstance inst;
  inst.model = model;
  std::vector<Pose2> poses = forward_kinematics(model, state);

  RigidBody palm;
  palm.pose = poses[0];
  palm.local_com = (model.palm.a + model.palm.b) * 0.5;
  palm.parts.push_back(model.palm);
  palm.finalize_mass(capsule_mass(model.palm, model.palm_density),
                     capsule_inertia(model.palm, model.palm_density));
  inst.link_bodies.push_back(add_body(world, palm));

  for (size_t i = 0; i < model.links.size(); ++i) {
    const HandLink& link = model.links[i];
    CapsuleShape cap{{0.0, 0.0}, {link.length, 0.0}, link.radius};
    RigidBody body;
    body.pose = poses[i + 1];
    body.local_com = {link.length * 0.5, 0.0};
    body.parts.push_back(cap);
    body.finalize_mass(capsule_mass(cap, link.density),
                       capsule_inertia(cap, link.density));
    inst.link_bodies.push_back(add_body(world, body));
  }

  for (const HandJoint& j : model.joints) {
    RevoluteJoint joint;
    joint.body_parent = inst.link_bodies[j.parent_link];
    joint.body_child = inst.link_bodies[j.child_link];
    joint.parent_anchor = j.parent_anchor;
    joint.child_anchor = {0.0, 0.0};
    joint.rest_angle = j.rest_angle;
    joint.lo = j.lo;
    joint.hi = j.hi;
    inst.joint_indices.push_back(static_cast<int>(world.joints.size()));
    world.joints.push_back(joint);
  }

  // Effective inertia per joint: the child link about its pivot. Downstream
  // links hang off free joints and do not resist the instantaneous response,
  // so counting them would overestimate the inertia and under-attenuate the
  // stable-PD torque into instability.
  inst.joint_eff_inertia.assign(model.joint_count(), 0.0);
  for (int j = 0; j < model.joint_count(); ++j) {
    const HandJoint& mj = model.joints[j];
    Vec2 anchor = world.bodies[inst.link_bodies[mj.parent_link]].pose.transform(mj.parent_anchor);
    const RigidBody& b = world.bodies[inst.link_bodies[mj.child_link]];
    inst.joint_eff_inertia[j] =
        b.inertia + b.mass * (b.world_com() - anchor).length_sq();
  }
  double total_mass = 0.0, root_inertia = 0.0;
  Vec2 root_com = world.bodies[inst.link_bodies[0]].world_com();
  for (int bi : inst.link_bodies) {
    const RigidBody& b = world.bodies[bi];
    total_mass += b.mass;
    root_inertia += b.inertia + b.mass * (b.world_com() - root_com).length_sq();
  }
  inst.root_eff_mass = total_mass;
  inst.root_eff_inertia = root_inertia;
  inst.contact_impulse.assign(model.link_count(), 0.0);

  world.hands.push_back(std::move(inst));
  return static_cast<int>(world.hands.size()) - 1;
}

JointState get_hand_state(const SimWorld& world, int hand_index) {
  const HandInstance& inst = world.hands[hand_index];
  const RigidBody& palm = world.bodies[inst.link_bodies[0]];
  JointState s;
  s.root_pose = palm.pose;
  s.root_lin_vel = palm.velocity_at(palm.pose.p);
  s.root_ang_vel = palm.ang_vel;
  int J = inst.model.joint_count();
  s.q.resize(J);
  s.qdot.resize(J);
  for (int j = 0; j < J; ++j) {
    const HandJoint& mj = inst.model.joints[j];
    const RigidBody& parent = world.bodies[inst.link_bodies[mj.parent_link]];
    const RigidBody& child = world.bodies[inst.link_bodies[mj.child_link]];
    s.q[j] = wrap_angle(child.pose.angle - parent.pose.angle - mj.rest_angle);
    s.qdot[j] = child.ang_vel - parent.ang_vel;
  }
  return s;
}

namespace {

// Fills body poses and velocities for a hand state; shared by the teleport
// and kinematic-drive paths.
void place_hand(SimWorld& world, HandInstance& inst, const JointState& state) {
  std::vector<Pose2> poses = forward_kinematics(inst.model, state);
  std::vector<double> ang_vel(inst.model.link_count(), 0.0);
  std::vector<Vec2> com_vel(inst.model.link_count());

  RigidBody& palm = world.bodies[inst.link_bodies[0]];
  palm.pose = poses[0];
  ang_vel[0] = state.root_ang_vel;
  Vec2 r0 = palm.pose.rot().rotate(palm.local_com);
  com_vel[0] = state.root_lin_vel + Vec2{-state.root_ang_vel * r0.y, state.root_ang_vel * r0.x};
  palm.lin_vel = com_vel[0];
  palm.ang_vel = ang_vel[0];

  for (int j = 0; j < inst.model.joint_count(); ++j) {
    const HandJoint& mj = inst.model.joints[j];
    int pi = mj.parent_link;
    int ci = mj.child_link;
    RigidBody& child = world.bodies[inst.link_bodies[ci]];
    child.pose = poses[ci];
    ang_vel[ci] = ang_vel[pi] + state.qdot[j];
    const RigidBody& parent = world.bodies[inst.link_bodies[pi]];
    Vec2 anchor = parent.pose.transform(mj.parent_anchor);
    Vec2 parent_r = anchor - parent.world_com();
    Vec2 anchor_vel = com_vel[pi] + Vec2{-ang_vel[pi] * parent_r.y, ang_vel[pi] * parent_r.x};
    Vec2 child_r = child.world_com() - anchor;
    com_vel[ci] = anchor_vel + Vec2{-ang_vel[ci] * child_r.y, ang_vel[ci] * child_r.x};
    child.lin_vel = com_vel[ci];
    child.ang_vel = ang_vel[ci];
  }
}

}  // namespace

void set_hand_state(SimWorld& world, int hand_index, const JointState& state) {
  place_hand(world, world.hands[hand_index], state);
}

void set_hand_pd_targets(SimWorld& world, int hand_index, const PdTargets& targets) {
  HandInstance& inst = world.hands[hand_index];
  inst.pd_targets = targets;
  inst.pd_active = true;
}

void clear_hand_pd_targets(SimWorld& world, int hand_index) {
  world.hands[hand_index].pd_active = false;
}

void set_hand_kinematic(SimWorld& world, int hand_index, bool kinematic) {
  for (int bi : world.hands[hand_index].link_bodies) {
    RigidBody& b = world.bodies[bi];
    b.kinematic = kinematic;
    b.finalize_mass(b.mass, b.inertia);
  }
}

void drive_hand_kinematic(SimWorld& world, int hand_index, const JointState& now,
                          const JointState& next, double dt) {
  HandInstance& inst = world.hands[hand_index];
  place_hand(world, inst, now);
  std::vector<Pose2> p0 = forward_kinematics(inst.model, now);
  std::vector<Pose2> p1 = forward_kinematics(inst.model, next);
  for (int i = 0; i < inst.model.link_count(); ++i) {
    RigidBody& b = world.bodies[inst.link_bodies[i]];
    Vec2 com0 = p0[i].transform(b.local_com);
    Vec2 com1 = p1[i].transform(b.local_com);
    b.lin_vel = (com1 - com0) * (1.0 / dt);
    b.ang_vel = wrap_angle(p1[i].angle - p0[i].angle) / dt;
  }
}

namespace {

struct ContactSolveData {
  int a, b;
  Vec2 ra, rb;  // contact arm from each COM
  Vec2 n, t;
  double kn, kt;
  double bias;  // target separating velocity
  double pn = 0.0, pt = 0.0;
  Vec2 position;
  double penetration;
};

struct JointSolveData {
  int a, b;  // parent, child
  Vec2 ra, rb;
  Vec2 bias;
  double k00, k01, k11;  // effective mass matrix
  double lo, hi, rest;
  double limit_impulse_lo = 0.0, limit_impulse_hi = 0.0;
  double k_ang = 0.0;
};

// One scalar soft-constraint row implementing the stable-PD law for a single
// DOF. Solving  cdot + bias + gamma * lambda = 0  yields the impulse
//   lambda = dt * (-kp (C + dt cdot_next) - kd cdot_next),
// i.e. the implicit PD torque evaluated at the next-step state. Because the
// solver measures the true articulated response through its iterations, the
// row is bounded at arbitrarily stiff gains.
struct MotorRow {
  int parent = -1;     // -1 for root rows (anchored to the world)
  int child = -1;
  bool linear = false;
  Vec2 axis;           // linear rows: world-frame direction of the DOF
  Vec2 rc;             // linear rows: arm from the child COM to the palm origin
  double k_eff = 0.0;  // J M^-1 J^T
  double gamma = 0.0;
  double bias = 0.0;
  double impulse = 0.0;
};

void soft_params(double error, double kp, double kd, double dt,
                 double& gamma, double& bias) {
  double denom = dt * (kd + dt * kp);
  gamma = denom > 0.0 ? 1.0 / denom : 0.0;
  bias = denom > 0.0 ? error * kp / (kd + dt * kp) : 0.0;
}

bool joint_connected(const SimWorld& w, int a, int b) {
  for (const RevoluteJoint& j : w.joints) {
    if ((j.body_parent == a && j.body_child == b) ||
        (j.body_parent == b && j.body_child == a)) {
      return true;
    }
  }
  return false;
}

}  // namespace

void step(SimWorld& world, const std::vector<double>& actuation) {
  if (world.diverged) return;
  const double dt = world.dt;
  const ContactParams& cp = world.contact;

  // External and gravitational forces.
  for (size_t i = 0; i < world.bodies.size(); ++i) {
    RigidBody& b = world.bodies[i];
    if (b.inv_mass <= 0.0 && b.inv_inertia <= 0.0) continue;
    b.lin_vel += (world.gravity + world.external_force[i] * b.inv_mass) * dt;
    b.ang_vel += world.external_torque[i] * b.inv_inertia * dt;
  }

  // Actuation: per hand [root fx, fy, torque, joint torques...].
  if (!actuation.empty()) {
    size_t cursor = 0;
    for (HandInstance& inst : world.hands) {
      int J = inst.model.joint_count();
      if (cursor + 3 + J > actuation.size()) {
        throw std::invalid_argument("actuation vector too short");
      }
      RigidBody& palm = world.bodies[inst.link_bodies[0]];
      palm.lin_vel += Vec2{actuation[cursor], actuation[cursor + 1]} * (palm.inv_mass * dt);
      palm.ang_vel += actuation[cursor + 2] * palm.inv_inertia * dt;
      for (int j = 0; j < J; ++j) {
        double tau = actuation[cursor + 3 + j];
        const HandJoint& mj = inst.model.joints[j];
        RigidBody& parent = world.bodies[inst.link_bodies[mj.parent_link]];
        RigidBody& child = world.bodies[inst.link_bodies[mj.child_link]];
        child.ang_vel += tau * child.inv_inertia * dt;
        parent.ang_vel -= tau * parent.inv_inertia * dt;
      }
      cursor += 3 + J;
    }
  }

  // Body -> (hand, link) lookup for collision filtering and sensors.
  int nb = static_cast<int>(world.bodies.size());
  std::vector<int> body_hand(nb, -1), body_link(nb, -1);
  for (size_t h = 0; h < world.hands.size(); ++h) {
    const HandInstance& inst = world.hands[h];
    for (size_t l = 0; l < inst.link_bodies.size(); ++l) {
      body_hand[inst.link_bodies[l]] = static_cast<int>(h);
      body_link[inst.link_bodies[l]] = static_cast<int>(l);
    }
  }

  // Narrow phase over eligible pairs.
  std::vector<ContactSolveData> contacts;
  std::vector<ContactPoint> report;
  for (int i = 0; i < nb; ++i) {
    for (int j = i + 1; j < nb; ++j) {
      const RigidBody& bi = world.bodies[i];
      const RigidBody& bj = world.bodies[j];
      bool dyn_i = bi.inv_mass > 0.0 || bi.inv_inertia > 0.0;
      bool dyn_j = bj.inv_mass > 0.0 || bj.inv_inertia > 0.0;
      if (!dyn_i && !dyn_j) continue;
      if (joint_connected(world, i, j)) continue;
      if (body_hand[i] >= 0 && body_hand[i] == body_hand[j] && !world.self_collision) continue;
      // Put the hand link first so contact normals point from the object
      // into the link.
      int a = i, b = j;
      if (body_hand[j] >= 0 && body_hand[i] < 0) std::swap(a, b);
      auto found = detect_contacts(world.bodies[a].parts, world.bodies[a].pose,
                                   world.bodies[b].parts, world.bodies[b].pose);
      for (ContactPoint& c : found) {
        c.body_a = a;
        c.body_b = b;
        ContactSolveData d;
        d.a = a;
        d.b = b;
        d.n = c.normal;
        d.t = c.normal.perp();
        d.ra = c.position - world.bodies[a].world_com();
        d.rb = c.position - world.bodies[b].world_com();
        const RigidBody& ba = world.bodies[a];
        const RigidBody& bb = world.bodies[b];
        double rna = d.ra.cross(d.n);
        double rnb = d.rb.cross(d.n);
        d.kn = ba.inv_mass + bb.inv_mass + ba.inv_inertia * rna * rna + bb.inv_inertia * rnb * rnb;
        double rta = d.ra.cross(d.t);
        double rtb = d.rb.cross(d.t);
        d.kt = ba.inv_mass + bb.inv_mass + ba.inv_inertia * rta * rta + bb.inv_inertia * rtb * rtb;
        d.position = c.position;
        d.penetration = c.penetration;
        d.bias = cp.baumgarte_beta * std::max(c.penetration - cp.penetration_slop, 0.0);
        // Restitution against the pre-solve approach speed.
        Vec2 rel = ba.velocity_at(c.position) - bb.velocity_at(c.position);
        double vn0 = d.n.dot(rel);
        if (cp.restitution > 0.0 && vn0 < -cp.restitution_threshold) {
          d.bias = std::max(d.bias, -cp.restitution * vn0);
        }
        contacts.push_back(d);
        report.push_back(c);
      }
    }
  }

  // Joint constraint setup.
  std::vector<JointSolveData> joints;
  const double joint_beta = 0.2 / dt;
  for (const RevoluteJoint& rj : world.joints) {
    const RigidBody& pa = world.bodies[rj.body_parent];
    const RigidBody& ch = world.bodies[rj.body_child];
    JointSolveData d;
    d.a = rj.body_parent;
    d.b = rj.body_child;
    Vec2 anchor_a = pa.pose.transform(rj.parent_anchor);
    Vec2 anchor_b = ch.pose.transform(rj.child_anchor);
    d.ra = anchor_a - pa.world_com();
    d.rb = anchor_b - ch.world_com();
    d.bias = (anchor_b - anchor_a) * joint_beta;
    double ima = pa.inv_mass, imb = ch.inv_mass;
    double iia = pa.inv_inertia, iib = ch.inv_inertia;
    d.k00 = ima + imb + iia * d.ra.y * d.ra.y + iib * d.rb.y * d.rb.y;
    d.k01 = -iia * d.ra.x * d.ra.y - iib * d.rb.x * d.rb.y;
    d.k11 = ima + imb + iia * d.ra.x * d.ra.x + iib * d.rb.x * d.rb.x;
    d.lo = rj.lo;
    d.hi = rj.hi;
    d.rest = rj.rest_angle;
    d.k_ang = iia + iib;
    joints.push_back(d);
  }

  // Stable-PD motor rows for hands with armed targets.
  std::vector<MotorRow> motors;
  auto critical = [](double kp, double kd, double inertia) {
    return kd > 0.0 ? kd : 2.0 * std::sqrt(kp * inertia);
  };
  for (const HandInstance& inst : world.hands) {
    if (!inst.pd_active) continue;
    const HandModel& model = inst.model;
    const RigidBody& palm = world.bodies[inst.link_bodies[0]];

    double kp_lin = model.root_linear.kp;
    double kd_lin = critical(kp_lin, model.root_linear.kd, inst.root_eff_mass);
    Vec2 origin = palm.pose.p;
    Vec2 lin_err = origin - inst.pd_targets.root.p;
    for (int axis = 0; axis < 2; ++axis) {
      MotorRow m;
      m.child = inst.link_bodies[0];
      m.linear = true;
      m.axis = axis == 0 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
      m.rc = origin - palm.world_com();
      double rca = m.rc.cross(m.axis);
      m.k_eff = palm.inv_mass + palm.inv_inertia * rca * rca;
      soft_params(axis == 0 ? lin_err.x : lin_err.y, kp_lin, kd_lin, dt,
                  m.gamma, m.bias);
      motors.push_back(m);
    }

    MotorRow ang;
    ang.child = inst.link_bodies[0];
    ang.k_eff = palm.inv_inertia;
    double kp_ang = model.root_angular.kp;
    double kd_ang = critical(kp_ang, model.root_angular.kd, inst.root_eff_inertia);
    soft_params(angle_diff(palm.pose.angle, inst.pd_targets.root.angle),
                kp_ang, kd_ang, dt, ang.gamma, ang.bias);
    motors.push_back(ang);

    for (int j = 0; j < model.joint_count(); ++j) {
      const HandJoint& mj = model.joints[j];
      const RigidBody& pa = world.bodies[inst.link_bodies[mj.parent_link]];
      const RigidBody& ch = world.bodies[inst.link_bodies[mj.child_link]];
      MotorRow m;
      m.parent = inst.link_bodies[mj.parent_link];
      m.child = inst.link_bodies[mj.child_link];
      m.k_eff = pa.inv_inertia + ch.inv_inertia;
      const PdGains& g = mj.gains;
      double kd = critical(g.kp, g.kd, inst.joint_eff_inertia[j]);
      double q = wrap_angle(ch.pose.angle - pa.pose.angle - mj.rest_angle);
      soft_params(angle_diff(q, inst.pd_targets.q[j]), g.kp, kd, dt,
                  m.gamma, m.bias);
      motors.push_back(m);
    }
  }

  for (int iter = 0; iter < cp.solver_iterations; ++iter) {
    for (MotorRow& m : motors) {
      RigidBody& ch = world.bodies[m.child];
      double cdot;
      if (m.linear) {
        Vec2 v = ch.lin_vel + Vec2{-ch.ang_vel * m.rc.y, ch.ang_vel * m.rc.x};
        cdot = m.axis.dot(v);
      } else if (m.parent >= 0) {
        cdot = ch.ang_vel - world.bodies[m.parent].ang_vel;
      } else {
        cdot = ch.ang_vel;
      }
      double dl = -(cdot + m.bias + m.gamma * m.impulse) / (m.k_eff + m.gamma);
      m.impulse += dl;
      if (m.linear) {
        Vec2 p = m.axis * dl;
        ch.lin_vel += p * ch.inv_mass;
        ch.ang_vel += ch.inv_inertia * m.rc.cross(p);
      } else {
        ch.ang_vel += ch.inv_inertia * dl;
        if (m.parent >= 0) {
          world.bodies[m.parent].ang_vel -= world.bodies[m.parent].inv_inertia * dl;
        }
      }
    }

    // Revolute joints: drive the anchor-velocity mismatch (plus Baumgarte
    // position bias) to zero.
    for (size_t ji = 0; ji < joints.size(); ++ji) {
      JointSolveData& d = joints[ji];
      RigidBody& pa = world.bodies[d.a];
      RigidBody& ch = world.bodies[d.b];
      Vec2 va = pa.lin_vel + Vec2{-pa.ang_vel * d.ra.y, pa.ang_vel * d.ra.x};
      Vec2 vb = ch.lin_vel + Vec2{-ch.ang_vel * d.rb.y, ch.ang_vel * d.rb.x};
      Vec2 c = vb - va + d.bias;
      double det = d.k00 * d.k11 - d.k01 * d.k01;
      if (det <= 0.0) continue;
      Vec2 p{-(d.k11 * c.x - d.k01 * c.y) / det, -(d.k00 * c.y - d.k01 * c.x) / det};
      ch.lin_vel += p * ch.inv_mass;
      ch.ang_vel += ch.inv_inertia * d.rb.cross(p);
      pa.lin_vel -= p * pa.inv_mass;
      pa.ang_vel -= pa.inv_inertia * d.ra.cross(p);

      // Angular limit as a one-sided constraint.
      if (d.k_ang > 0.0) {
        double q = wrap_angle(ch.pose.angle - pa.pose.angle - d.rest);
        double qdot = ch.ang_vel - pa.ang_vel;
        if (q < d.lo) {
          double cdot = qdot - joint_beta * (d.lo - q);
          double dl = -cdot / d.k_ang;
          double old = d.limit_impulse_lo;
          d.limit_impulse_lo = std::max(0.0, old + dl);
          dl = d.limit_impulse_lo - old;
          ch.ang_vel += ch.inv_inertia * dl;
          pa.ang_vel -= pa.inv_inertia * dl;
        } else if (q > d.hi) {
          double cdot = qdot + joint_beta * (q - d.hi);
          double dl = -cdot / d.k_ang;
          double old = d.limit_impulse_hi;
          d.limit_impulse_hi = std::min(0.0, old + dl);
          dl = d.limit_impulse_hi - old;
          ch.ang_vel += ch.inv_inertia * dl;
          pa.ang_vel -= pa.inv_inertia * dl;
        }
      }
    }

    // Contacts: non-penetration with accumulated clamping, then Coulomb
    // friction bounded by the friction cone.
    for (ContactSolveData& d : contacts) {
      RigidBody& ba = world.bodies[d.a];
      RigidBody& bb = world.bodies[d.b];
      Vec2 va = ba.lin_vel + Vec2{-ba.ang_vel * d.ra.y, ba.ang_vel * d.ra.x};
      Vec2 vb = bb.lin_vel + Vec2{-bb.ang_vel * d.rb.y, bb.ang_vel * d.rb.x};
      double vn = d.n.dot(va - vb);
      double dpn = (d.bias - vn) / d.kn;
      double old_pn = d.pn;
      d.pn = std::max(0.0, old_pn + dpn);
      dpn = d.pn - old_pn;
      Vec2 p = d.n * dpn;
      ba.lin_vel += p * ba.inv_mass;
      ba.ang_vel += ba.inv_inertia * d.ra.cross(p);
      bb.lin_vel -= p * bb.inv_mass;
      bb.ang_vel -= bb.inv_inertia * d.rb.cross(p);

      va = ba.lin_vel + Vec2{-ba.ang_vel * d.ra.y, ba.ang_vel * d.ra.x};
      vb = bb.lin_vel + Vec2{-bb.ang_vel * d.rb.y, bb.ang_vel * d.rb.x};
      double vt = d.t.dot(va - vb);
      double dpt = -vt / d.kt;
      double max_t = cp.mu * d.pn;
      double old_pt = d.pt;
      d.pt = clamp(old_pt + dpt, -max_t, max_t);
      dpt = d.pt - old_pt;
      p = d.t * dpt;
      ba.lin_vel += p * ba.inv_mass;
      ba.ang_vel += ba.inv_inertia * d.ra.cross(p);
      bb.lin_vel -= p * bb.inv_mass;
      bb.ang_vel -= bb.inv_inertia * d.rb.cross(p);
    }
  }

  // Integrate poses (kinematic bodies advance on their prescribed velocity).
  for (RigidBody& b : world.bodies) {
    if (!b.kinematic && b.inv_mass <= 0.0 && b.inv_inertia <= 0.0) continue;
    if (b.kinematic && b.lin_vel.length_sq() == 0.0 && b.ang_vel == 0.0) continue;
    Vec2 com = b.world_com() + b.lin_vel * dt;
    double angle = wrap_angle(b.pose.angle + b.ang_vel * dt);
    b.pose = Pose2(com - Rot2(angle).rotate(b.local_com), angle);
  }

  // Positional clamp of joint limits.
  for (const RevoluteJoint& rj : world.joints) {
    RigidBody& pa = world.bodies[rj.body_parent];
    RigidBody& ch = world.bodies[rj.body_child];
    double q = wrap_angle(ch.pose.angle - pa.pose.angle - rj.rest_angle);
    double qc = clamp(q, rj.lo, rj.hi);
    if (qc != q) {
      Vec2 anchor = pa.pose.transform(rj.parent_anchor);
      double delta = qc - q;
      double angle = wrap_angle(ch.pose.angle + delta);
      Vec2 p = anchor + Rot2(delta).rotate(ch.pose.p - anchor);
      ch.pose = Pose2(p, angle);
    }
  }

  // Final impulse bookkeeping: contact report and per-link sensors.
  world.contacts.clear();
  for (size_t k = 0; k < contacts.size(); ++k) {
    const ContactSolveData& d = contacts[k];
    ContactPoint c = report[k];
    c.normal_impulse = d.pn;
    c.tangent_impulse = d.pt;
    world.contacts.push_back(c);

    double magnitude = std::sqrt(d.pn * d.pn + d.pt * d.pt);
    for (int side = 0; side < 2; ++side) {
      int self = side == 0 ? d.a : d.b;
      int other = side == 0 ? d.b : d.a;
      if (body_hand[self] >= 0 && other == world.object_body) {
        world.hands[body_hand[self]].contact_impulse[body_link[self]] += magnitude;
      }
    }
  }

  // Divergence check.
  for (const RigidBody& b : world.bodies) {
    if (!std::isfinite(b.pose.p.x) || !std::isfinite(b.pose.p.y) ||
        !std::isfinite(b.pose.angle) || !std::isfinite(b.lin_vel.x) ||
        !std::isfinite(b.lin_vel.y) || !std::isfinite(b.ang_vel)) {
      world.diverged = true;
      return;
    }
  }
}

std::vector<double> read_contact_sensors(const SimWorld& world, int hand_index) {
  const HandInstance& inst = world.hands[hand_index];
  std::vector<double> forces(inst.contact_impulse.size(), 0.0);
  double inv_dt = 1.0 / world.control_dt();
  for (size_t i = 0; i < forces.size(); ++i) {
    forces[i] = inst.contact_impulse[i] * inv_dt;
  }
  return forces;
}

void reset_contact_sensors(SimWorld& world) {
  for (HandInstance& inst : world.hands) {
    std::fill(inst.contact_impulse.begin(), inst.contact_impulse.end(), 0.0);
  }
}

}  // namespace manip
