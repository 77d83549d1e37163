#ifndef MANIP_IMITATION_CLIP_HPP_
#define MANIP_IMITATION_CLIP_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "manip/math.hpp"

namespace manip {

struct ClipError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Time-indexed target poses for hand root(s), hand joints, and the object.
struct ReferenceClip {
  struct Frame {
    std::vector<Pose2> roots;     // one per hand
    std::vector<double> q;        // joints_per_hand * num_hands
    Pose2 object;
  };

  double frame_rate = 120.0;
  int joints_per_hand = 6;
  int num_hands = 1;
  std::vector<Frame> frames;

  double duration() const {
    return frames.empty() ? 0.0 : frames.size() / frame_rate;
  }
  // Number of control steps covered by the clip.
  int control_steps(double control_rate) const {
    return static_cast<int>(std::floor(frames.size() * control_rate / frame_rate + 0.5));
  }
  // Linear time interpolation; angles take the shortest path.
  Frame sample(double time) const;
  Frame sample_step(int step_index, double control_rate) const {
    return sample(step_index / control_rate);
  }

  void validate() const;
};

ReferenceClip load_clip(const std::string& path);
void save_clip(const ReferenceClip& clip, const std::string& path);

}  // namespace manip

#endif  // MANIP_IMITATION_CLIP_HPP_
