#include "manip/learner/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace manip {

Mlp::Mlp(int input, std::vector<int> hidden, int output)
    : input_(input), output_(output), hidden_(std::move(hidden)) {
  if (input <= 0 || output <= 0) {
    throw std::invalid_argument("mlp needs positive input/output dims");
  }
  int in = input_;
  int offset = 0;
  for (int h : hidden_) {
    if (h <= 0) throw std::invalid_argument("mlp hidden width must be positive");
    layer_in_.push_back(in);
    layer_out_.push_back(h);
    layer_off_.push_back(offset);
    offset += h * in + h;
    in = h;
  }
  layer_in_.push_back(in);
  layer_out_.push_back(output_);
  layer_off_.push_back(offset);
  offset += output_ * in + output_;
  params.assign(offset, 0.0);
}

void Mlp::init(Rng& rng, double output_gain) {
  size_t layers = layer_in_.size();
  for (size_t l = 0; l < layers; ++l) {
    double gain = (l + 1 == layers) ? output_gain : 1.0;
    double bound = gain * std::sqrt(6.0 / (layer_in_[l] + layer_out_[l]));
    int off = layer_off_[l];
    int nw = layer_out_[l] * layer_in_[l];
    for (int i = 0; i < nw; ++i) params[off + i] = rng.uniform(-bound, bound);
    for (int i = 0; i < layer_out_[l]; ++i) params[off + nw + i] = 0.0;
  }
}

std::vector<double> Mlp::forward(const std::vector<double>& x) const {
  Tape tape;
  return forward(x, tape);
}

std::vector<double> Mlp::forward(const std::vector<double>& x,
                                 Tape& tape) const {
  if (static_cast<int>(x.size()) != input_) {
    throw std::invalid_argument("mlp input dimension mismatch");
  }
  tape.input = x;
  tape.post.clear();
  const std::vector<double>* in = &tape.input;
  size_t layers = layer_in_.size();
  for (size_t l = 0; l < layers; ++l) {
    int ni = layer_in_[l];
    int no = layer_out_[l];
    int off = layer_off_[l];
    std::vector<double> out(no);
    for (int o = 0; o < no; ++o) {
      double z = params[off + no * ni + o];  // bias
      const double* w = &params[off + o * ni];
      for (int i = 0; i < ni; ++i) z += w[i] * (*in)[i];
      out[o] = (l + 1 == layers) ? z : std::tanh(z);
    }
    tape.post.push_back(std::move(out));
    in = &tape.post.back();
  }
  return tape.post.back();
}

void Mlp::backward(const Tape& tape, const std::vector<double>& dout,
                   std::vector<double>& grad) const {
  if (grad.size() != params.size()) grad.assign(params.size(), 0.0);
  size_t layers = layer_in_.size();
  std::vector<double> delta = dout;  // dLoss/dz of the current layer
  for (size_t li = layers; li-- > 0;) {
    int ni = layer_in_[li];
    int no = layer_out_[li];
    int off = layer_off_[li];
    const std::vector<double>& in =
        li == 0 ? tape.input : tape.post[li - 1];
    // Hidden layers: fold the tanh derivative into delta first.
    if (li + 1 != layers) {
      for (int o = 0; o < no; ++o) {
        double y = tape.post[li][o];
        delta[o] *= 1.0 - y * y;
      }
    }
    std::vector<double> din(ni, 0.0);
    for (int o = 0; o < no; ++o) {
      double d = delta[o];
      double* gw = &grad[off + o * ni];
      const double* w = &params[off + o * ni];
      for (int i = 0; i < ni; ++i) {
        gw[i] += d * in[i];
        din[i] += d * w[i];
      }
      grad[off + no * ni + o] += d;
    }
    delta = std::move(din);
  }
}

}  // namespace manip
