#ifndef MANIP_LEARNER_OPTIMIZER_HPP_
#define MANIP_LEARNER_OPTIMIZER_HPP_

#include <vector>

namespace manip {

// Adam-style adaptive gradient step with bias correction.
class Adam {
 public:
  explicit Adam(size_t dim = 0) { resize(dim); }

  void resize(size_t dim);
  void reset();
  // params -= lr * mhat / (sqrt(vhat) + eps)
  void step(std::vector<double>& params, const std::vector<double>& grad,
            double lr);

  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

 private:
  std::vector<double> m_, v_;
  long t_ = 0;
};

}  // namespace manip

#endif  // MANIP_LEARNER_OPTIMIZER_HPP_
