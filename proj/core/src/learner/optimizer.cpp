#include "manip/learner/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace manip {

void Adam::resize(size_t dim) {
  m_.assign(dim, 0.0);
  v_.assign(dim, 0.0);
  t_ = 0;
}

void Adam::reset() { resize(m_.size()); }

void Adam::step(std::vector<double>& params, const std::vector<double>& grad,
                double lr) {
  if (params.size() != m_.size() || grad.size() != m_.size()) {
    throw std::invalid_argument("adam dimension mismatch");
  }
  ++t_;
  double c1 = 1.0 - std::pow(beta1, static_cast<double>(t_));
  double c2 = 1.0 - std::pow(beta2, static_cast<double>(t_));
  for (size_t i = 0; i < params.size(); ++i) {
    m_[i] = beta1 * m_[i] + (1.0 - beta1) * grad[i];
    v_[i] = beta2 * v_[i] + (1.0 - beta2) * grad[i] * grad[i];
    params[i] -= lr * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + eps);
  }
}

}  // namespace manip
