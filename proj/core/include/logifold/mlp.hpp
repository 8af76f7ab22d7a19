#pragma once

#include "logifold/affine.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace logifold {

enum class Activation { ReLU, Sigmoid, Tanh };
enum class Head { IndexMax, Softmax };

std::string_view to_string(Activation a);
std::string_view to_string(Head h);

// Feed-forward network  head o L_N o r o ... o r o L_1  with the same
// activation r between consecutive affine layers.
class MlpSpec {
 public:
  // Throws DimensionChainError when consecutive layers do not compose.
  MlpSpec(std::vector<AffineMap> layers, Activation hidden, Head head);

  std::size_t input_dim() const { return layers_.front().input_dim(); }
  std::size_t output_dim() const { return layers_.back().output_dim(); }
  std::size_t hidden_units() const;
  const std::vector<AffineMap>& layers() const { return layers_; }
  Activation hidden_activation() const { return hidden_; }
  Head head() const { return head_; }

  // Pre-head outputs of the last layer.
  Vector logits(const Vector& x) const;
  // Pre-activations of every layer, last entry equal to logits(x).
  std::vector<Vector> preactivations(const Vector& x) const;

  // argmax of the logits, ties to the lowest index.
  std::size_t predict_index(const Vector& x) const;
  Vector predict_proba(const Vector& x) const { return softmax(logits(x)); }

 private:
  std::vector<AffineMap> layers_;
  Activation hidden_;
  Head head_;
};

}  // namespace logifold
