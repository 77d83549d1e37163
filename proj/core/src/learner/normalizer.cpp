#include "manip/learner/normalizer.hpp"

#include <cmath>
#include <stdexcept>

#include "manip/math.hpp"

namespace manip {

void RunningNormalizer::resize(int dim) {
  count_ = 0.0;
  mean_.assign(dim, 0.0);
  m2_.assign(dim, 0.0);
}

void RunningNormalizer::update(const std::vector<double>& x) {
  if (frozen) return;
  if (x.size() != mean_.size()) {
    throw std::invalid_argument("normalizer dimension mismatch");
  }
  count_ += 1.0;
  for (size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - mean_[i];
    mean_[i] += d / count_;
    m2_[i] += d * (x[i] - mean_[i]);
  }
}

std::vector<double> RunningNormalizer::normalize(
    const std::vector<double>& x) const {
  if (x.size() != mean_.size()) {
    throw std::invalid_argument("normalizer dimension mismatch");
  }
  std::vector<double> out(x.size());
  double n = count_ > 1.0 ? count_ : 1.0;
  for (size_t i = 0; i < x.size(); ++i) {
    double var = count_ > 1.0 ? m2_[i] / n : 1.0;
    double z = (x[i] - mean_[i]) / std::sqrt(var + 1e-8);
    out[i] = clamp(z, -clip, clip);
  }
  return out;
}

std::vector<double> RunningNormalizer::variance() const {
  std::vector<double> var(mean_.size(), 1.0);
  if (count_ > 1.0) {
    for (size_t i = 0; i < var.size(); ++i) var[i] = m2_[i] / count_;
  }
  return var;
}

void RunningNormalizer::set_stats(double count, std::vector<double> mean,
                                  std::vector<double> m2) {
  if (mean.size() != m2.size()) {
    throw std::invalid_argument("normalizer stats size mismatch");
  }
  count_ = count;
  mean_ = std::move(mean);
  m2_ = std::move(m2);
}

}  // namespace manip
