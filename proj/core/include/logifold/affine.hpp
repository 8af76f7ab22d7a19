#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace logifold {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// x |-> W x + b. Construction rejects mismatched shapes and non-finite entries.
class AffineMap {
 public:
  AffineMap() = default;
  AffineMap(Matrix weights, Vector bias);

  // Row-major dense weights, as stored in model files.
  static AffineMap from_rows(const std::vector<std::vector<double>>& rows,
                             const std::vector<double>& bias);
  static AffineMap identity(std::size_t dim);

  std::size_t input_dim() const { return static_cast<std::size_t>(weights_.cols()); }
  std::size_t output_dim() const { return static_cast<std::size_t>(weights_.rows()); }

  const Matrix& weights() const { return weights_; }
  const Vector& bias() const { return bias_; }

  Vector apply(const Vector& x) const;

  // (this o inner)(x) = W (W' x + b') + b
  AffineMap compose(const AffineMap& inner) const;

  // Keeps rows whose mask entry is true and zeroes the others, which is
  // r o this on a chamber where the mask records the nonnegative rows.
  AffineMap mask_rows(const std::vector<bool>& keep) const;

  // Rows (l_i - l_j) for all i < j, in lexicographic (i, j) order.
  AffineMap pairwise_differences() const;

 private:
  Matrix weights_;
  Vector bias_;
};

Vector relu(const Vector& x);
Vector softmax(const Vector& logits);

// Lowest index among maximal coordinates.
std::size_t argmax_lowest(std::span<const double> values);
std::size_t argmax_lowest(const Vector& values);

}  // namespace logifold
