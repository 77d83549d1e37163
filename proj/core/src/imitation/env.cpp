#include "manip/imitation/env.hpp"

#include <algorithm>
#include <cmath>

namespace manip {

std::vector<double> ActionFilterState::apply(const std::vector<double>& a) {
  if (previous.size() != a.size()) previous.assign(a.size(), 0.0);
  std::vector<double> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    out[i] = alpha * a[i] + (1.0 - alpha) * previous[i];
  }
  previous = out;
  return out;
}

std::vector<PdTargets> action_to_targets(const std::vector<double>& delta,
                                         const ReferenceClip& clip, double time,
                                         const std::vector<HandModel>& hands) {
  ReferenceClip::Frame ref = clip.sample(time);
  std::vector<PdTargets> targets;
  int jph = clip.joints_per_hand;
  size_t k = 0;
  for (size_t h = 0; h < hands.size(); ++h) {
    PdTargets t;
    t.root = Pose2(ref.roots[h].p + Vec2{delta[k], delta[k + 1]},
                   ref.roots[h].angle + delta[k + 2]);
    k += 3;
    t.q.resize(jph);
    for (int j = 0; j < jph; ++j) {
      const HandJoint& joint = hands[h].joints[j];
      t.q[j] = clamp(ref.q[h * jph + j] + delta[k++], joint.lo, joint.hi);
    }
    targets.push_back(std::move(t));
  }
  return targets;
}

ManipulationEnv::ManipulationEnv(SceneTemplate scene, ReferenceClip clip,
                                 RewardConfig reward,
                                 TerminationThresholds term,
                                 ActionConfig action,
                                 PerturbationConfig perturb)
    : scene_(std::move(scene)),
      clip_(std::move(clip)),
      reward_(reward),
      term_(term),
      action_(action),
      perturb_(perturb) {
  clip_.validate();
  layout_.num_hands = static_cast<int>(scene_.hands.size());
  layout_.joints_per_hand = clip_.joints_per_hand;
  layout_.num_links = scene_.total_links();
  horizon_ = clip_.control_steps(scene_.control_rate);
  filter_.alpha = action_.alpha;
}

int ManipulationEnv::action_dim() const {
  return layout_.num_hands * (3 + layout_.joints_per_hand);
}

std::vector<double> ManipulationEnv::reset(uint64_t seed) {
  world_ = scene_.instantiate();
  // Episodes start from the first clip frame.
  const ReferenceClip::Frame& f0 = clip_.frames.front();
  int jph = clip_.joints_per_hand;
  for (size_t h = 0; h < scene_.hands.size(); ++h) {
    JointState s;
    s.root_pose = f0.roots[h];
    s.q.assign(f0.q.begin() + h * jph, f0.q.begin() + (h + 1) * jph);
    s.qdot.assign(jph, 0.0);
    set_hand_state(world_, static_cast<int>(h), s);
  }
  RigidBody& obj = world_.bodies[world_.object_body];
  obj.pose = f0.object;
  obj.lin_vel = {0.0, 0.0};
  obj.ang_vel = 0.0;
  reset_contact_sensors(world_);

  filter_.previous.assign(action_dim(), 0.0);
  step_index_ = 0;
  done_ = false;

  if (perturb_.enabled) {
    Rng rng(hash_combine(seed, 0x70657274));  // decorrelated from policy noise
    double total = horizon_ / scene_.control_rate;
    double span = std::max(0.0, total - perturb_.duration);
    perturb_start_ = rng.uniform(0.0, span);
    double dir = rng.uniform(0.0, 2.0 * M_PI);
    perturb_force_ = Vec2{std::cos(dir), std::sin(dir)} * perturb_.force;
  } else {
    perturb_start_ = -1.0;
  }
  return observe();
}

std::vector<double> ManipulationEnv::observe() {
  std::vector<double> contacts;
  for (size_t h = 0; h < scene_.hands.size(); ++h) {
    std::vector<double> c = read_contact_sensors(world_, static_cast<int>(h));
    contacts.insert(contacts.end(), c.begin(), c.end());
  }
  return build_observation(world_, clip_, step_index_, scene_.control_rate,
                           contacts);
}

StepResult ManipulationEnv::step(const std::vector<double>& action) {
  StepResult out;
  if (done_) {
    out.obs = observe();
    out.done = true;
    return out;
  }

  std::vector<double> a(action_dim(), 0.0);
  int jph = layout_.joints_per_hand;
  for (int h = 0; h < layout_.num_hands; ++h) {
    int base = h * (3 + jph);
    a[base + 0] = clamp(action[base + 0], -action_.pos_bound, action_.pos_bound);
    a[base + 1] = clamp(action[base + 1], -action_.pos_bound, action_.pos_bound);
    for (int j = 2; j < 3 + jph; ++j) {
      a[base + j] =
          clamp(action[base + j], -action_.angle_bound, action_.angle_bound);
    }
  }
  std::vector<double> filtered = filter_.apply(a);

  int substeps = world_.substeps_per_control;
  double dt = world_.dt;
  double t0 = step_index_ / scene_.control_rate;
  std::vector<int> tips;
  if (perturb_start_ >= 0.0) {
    for (size_t h = 0; h < world_.hands.size(); ++h) {
      for (int link : world_.hands[h].model.fingertip_links()) {
        tips.push_back(world_.hands[h].link_bodies[link]);
      }
    }
  }

  reset_contact_sensors(world_);
  for (int s = 0; s < substeps; ++s) {
    double t_now = t0 + s * dt;
    // Track the reference pose at the end of the substep, offset by the
    // filtered delta.
    std::vector<PdTargets> targets =
        action_to_targets(filtered, clip_, t_now + dt, scene_.hands);
    for (size_t h = 0; h < world_.hands.size(); ++h) {
      set_hand_pd_targets(world_, static_cast<int>(h), targets[h]);
    }
    if (!tips.empty()) {
      bool active = t_now >= perturb_start_ &&
                    t_now < perturb_start_ + perturb_.duration;
      Vec2 f = active ? perturb_force_ * (1.0 / tips.size()) : Vec2{0.0, 0.0};
      for (int b : tips) world_.external_force[b] = f;
    }
    manip::step(world_, {});
    if (world_.diverged) break;
  }
  ++step_index_;

  if (world_.diverged) {
    done_ = true;
    out.obs = std::vector<double>(layout_.dim(), 0.0);
    out.done = true;
    return out;
  }

  RewardTerms terms = compute_reward(world_, clip_, step_index_,
                                     scene_.control_rate, reward_);
  out.reward = terms.total;
  out.tracking = terms.hj;

  ReferenceClip::Frame ref = clip_.sample_step(step_index_, scene_.control_rate);
  const Pose2& obj = world_.bodies[world_.object_body].pose;
  if (check_termination(obj, ref.object, term_) || step_index_ >= horizon_) {
    done_ = true;
  }
  out.done = done_;
  out.obs = observe();
  return out;
}

}  // namespace manip
