#ifndef MANIP_LEARNER_NORMALIZER_HPP_
#define MANIP_LEARNER_NORMALIZER_HPP_

#include <vector>

namespace manip {

// Running mean/variance filter for observations (Welford accumulation).
// Freeze before evaluation so deterministic rollouts see fixed statistics.
class RunningNormalizer {
 public:
  RunningNormalizer() = default;
  explicit RunningNormalizer(int dim) { resize(dim); }

  void resize(int dim);
  int dim() const { return static_cast<int>(mean_.size()); }

  void update(const std::vector<double>& x);
  std::vector<double> normalize(const std::vector<double>& x) const;

  double count() const { return count_; }
  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& m2() const { return m2_; }  // Welford sum of squares
  std::vector<double> variance() const;
  void set_stats(double count, std::vector<double> mean, std::vector<double> m2);

  bool frozen = false;
  double clip = 10.0;  // normalized values are clamped to +/- clip

 private:
  double count_ = 0.0;
  std::vector<double> mean_;
  std::vector<double> m2_;
};

}  // namespace manip

#endif  // MANIP_LEARNER_NORMALIZER_HPP_
