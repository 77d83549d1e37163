#ifndef MANIP_LEARNER_MLP_HPP_
#define MANIP_LEARNER_MLP_HPP_

#include <vector>

#include "manip/rng.hpp"

namespace manip {

// Fully connected net with tanh hidden layers and a linear output, parameters
// in one flat vector (per layer: row-major weights [out x in], then biases).
class Mlp {
 public:
  Mlp() = default;
  Mlp(int input, std::vector<int> hidden, int output);

  int input_dim() const { return input_; }
  int output_dim() const { return output_; }
  const std::vector<int>& hidden() const { return hidden_; }
  int param_count() const { return static_cast<int>(params.size()); }

  // Scaled uniform init (Xavier bound times the layer gain); biases zero.
  // The output layer uses `output_gain` to start near-deterministic.
  void init(Rng& rng, double output_gain = 0.01);

  std::vector<double> forward(const std::vector<double>& x) const;

  // Forward pass that records activations for backward().
  struct Tape {
    std::vector<double> input;
    std::vector<std::vector<double>> post;  // post-activation per layer
  };
  std::vector<double> forward(const std::vector<double>& x, Tape& tape) const;

  // Accumulates dLoss/dparams into `grad` (same layout as `params`) given
  // dLoss/doutput for the taped sample.
  void backward(const Tape& tape, const std::vector<double>& dout,
                std::vector<double>& grad) const;

  std::vector<double> params;

 private:
  int input_ = 0;
  int output_ = 0;
  std::vector<int> hidden_;
  std::vector<int> layer_in_, layer_out_, layer_off_;
};

}  // namespace manip

#endif  // MANIP_LEARNER_MLP_HPP_
