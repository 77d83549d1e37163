#include "manip/imitation/clip.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace manip {

namespace {

double lerp_angle(double a, double b, double u) {
  return wrap_angle(a + wrap_angle(b - a) * u);
}

Pose2 lerp_pose(const Pose2& a, const Pose2& b, double u) {
  return Pose2(a.p + (b.p - a.p) * u, lerp_angle(a.angle, b.angle, u));
}

}  // namespace

ReferenceClip::Frame ReferenceClip::sample(double time) const {
  if (frames.empty()) throw ClipError("empty clip");
  double ft = time * frame_rate;
  int i0 = static_cast<int>(std::floor(ft));
  int last = static_cast<int>(frames.size()) - 1;
  if (i0 >= last) return frames[last];
  if (i0 < 0) return frames[0];
  double u = ft - i0;
  const Frame& a = frames[i0];
  const Frame& b = frames[i0 + 1];
  Frame out;
  for (size_t h = 0; h < a.roots.size(); ++h) {
    out.roots.push_back(lerp_pose(a.roots[h], b.roots[h], u));
  }
  out.q.resize(a.q.size());
  for (size_t j = 0; j < a.q.size(); ++j) {
    out.q[j] = lerp_angle(a.q[j], b.q[j], u);
  }
  out.object = lerp_pose(a.object, b.object, u);
  return out;
}

void ReferenceClip::validate() const {
  if (frames.size() < 2) throw ClipError("clip needs at least 2 frames");
  if (frame_rate <= 0.0) throw ClipError("clip frame rate must be positive");
  size_t nq = static_cast<size_t>(joints_per_hand) * num_hands;
  for (const Frame& f : frames) {
    if (static_cast<int>(f.roots.size()) != num_hands || f.q.size() != nq) {
      throw ClipError("clip frame layout mismatch");
    }
    for (const Pose2& r : f.roots) {
      if (!std::isfinite(r.p.x) || !std::isfinite(r.p.y) || !std::isfinite(r.angle)) {
        throw ClipError("non-finite clip frame");
      }
    }
  }
}

ReferenceClip load_clip(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ClipError("cannot open clip file: " + path);
  ReferenceClip clip;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "rate") {
      ls >> clip.frame_rate;
    } else if (tag == "hands") {
      ls >> clip.num_hands;
    } else if (tag == "joints") {
      ls >> clip.joints_per_hand;
    } else if (tag == "frame") {
      ReferenceClip::Frame f;
      for (int h = 0; h < clip.num_hands; ++h) {
        double x, y, a;
        if (!(ls >> x >> y >> a)) {
          throw ClipError(path + ":" + std::to_string(lineno) + ": truncated frame");
        }
        f.roots.emplace_back(x, y, a);
      }
      for (int j = 0; j < clip.joints_per_hand * clip.num_hands; ++j) {
        double q;
        if (!(ls >> q)) {
          throw ClipError(path + ":" + std::to_string(lineno) + ": truncated frame");
        }
        f.q.push_back(q);
      }
      double x, y, a;
      if (!(ls >> x >> y >> a)) {
        throw ClipError(path + ":" + std::to_string(lineno) + ": truncated frame");
      }
      f.object = Pose2(x, y, a);
      clip.frames.push_back(std::move(f));
    } else {
      throw ClipError(path + ":" + std::to_string(lineno) + ": unknown tag '" + tag + "'");
    }
  }
  clip.validate();
  return clip;
}

void save_clip(const ReferenceClip& clip, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ClipError("cannot write clip file: " + path);
  char buf[64];
  auto emit = [&](double v) {
    std::snprintf(buf, sizeof(buf), " %.17g", v);
    out << buf;
  };
  out << "rate " << clip.frame_rate << "\n";
  out << "hands " << clip.num_hands << "\n";
  out << "joints " << clip.joints_per_hand << "\n";
  for (const auto& f : clip.frames) {
    out << "frame";
    for (const Pose2& r : f.roots) {
      emit(r.p.x);
      emit(r.p.y);
      emit(r.angle);
    }
    for (double q : f.q) emit(q);
    emit(f.object.p.x);
    emit(f.object.p.y);
    emit(f.object.angle);
    out << "\n";
  }
}

}  // namespace manip
