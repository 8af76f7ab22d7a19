#include "logifold/mlp.hpp"

#include "logifold/error.hpp"

#include <cmath>
#include <string>

namespace logifold {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::ReLU: return "relu";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Tanh: return "tanh";
  }
  return "?";
}

std::string_view to_string(Head h) { return h == Head::IndexMax ? "index-max" : "softmax"; }

MlpSpec::MlpSpec(std::vector<AffineMap> layers, Activation hidden, Head head)
    : layers_(std::move(layers)), hidden_(hidden), head_(head) {
  if (layers_.empty()) throw DimensionChainError("network needs at least one layer");
  if (layers_.front().input_dim() == 0) throw DimensionChainError("input dimension must be positive");
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    if (layers_[k].output_dim() == 0) {
      throw DimensionChainError("layer " + std::to_string(k) + " has no outputs");
    }
    if (k > 0 && layers_[k].input_dim() != layers_[k - 1].output_dim()) {
      throw DimensionChainError("layer " + std::to_string(k) + " takes " +
                                std::to_string(layers_[k].input_dim()) + " inputs but layer " +
                                std::to_string(k - 1) + " produces " +
                                std::to_string(layers_[k - 1].output_dim()));
    }
  }
}

std::size_t MlpSpec::hidden_units() const {
  std::size_t n = 0;
  for (std::size_t k = 0; k + 1 < layers_.size(); ++k) n += layers_[k].output_dim();
  return n;
}

namespace {

Vector activate(Activation a, const Vector& z) {
  switch (a) {
    case Activation::ReLU: return relu(z);
    case Activation::Sigmoid: return (1.0 / (1.0 + (-z.array()).exp())).matrix();
    case Activation::Tanh: return z.array().tanh().matrix();
  }
  return z;
}

}  // namespace

std::vector<Vector> MlpSpec::preactivations(const Vector& x) const {
  std::vector<Vector> out;
  out.reserve(layers_.size());
  Vector h = x;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    out.push_back(layers_[k].apply(h));
    if (k + 1 < layers_.size()) h = activate(hidden_, out.back());
  }
  return out;
}

Vector MlpSpec::logits(const Vector& x) const {
  Vector h = x;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    h = layers_[k].apply(h);
    if (k + 1 < layers_.size()) h = activate(hidden_, h);
  }
  return h;
}

std::size_t MlpSpec::predict_index(const Vector& x) const { return argmax_lowest(logits(x)); }

}  // namespace logifold
