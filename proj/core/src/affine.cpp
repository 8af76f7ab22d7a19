#include "logifold/affine.hpp"

#include "logifold/error.hpp"

#include <cmath>
#include <string>

namespace logifold {

AffineMap::AffineMap(Matrix weights, Vector bias)
    : weights_(std::move(weights)), bias_(std::move(bias)) {
  if (weights_.rows() != bias_.size()) {
    throw DimensionMismatch("affine map has " + std::to_string(weights_.rows()) +
                            " weight rows but bias of length " +
                            std::to_string(bias_.size()));
  }
  if (!weights_.allFinite() || !bias_.allFinite()) {
    throw InvalidArgument("affine map entries must be finite");
  }
}

AffineMap AffineMap::from_rows(const std::vector<std::vector<double>>& rows,
                               const std::vector<double>& bias) {
  const auto m = static_cast<Eigen::Index>(rows.size());
  const auto n = rows.empty() ? Eigen::Index{0} : static_cast<Eigen::Index>(rows.front().size());
  Matrix w(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw DimensionMismatch("ragged weight matrix: row " + std::to_string(i) + " has " +
                              std::to_string(row.size()) + " entries, expected " +
                              std::to_string(n));
    }
    for (Eigen::Index j = 0; j < n; ++j) w(i, j) = row[static_cast<std::size_t>(j)];
  }
  Vector b(static_cast<Eigen::Index>(bias.size()));
  for (std::size_t i = 0; i < bias.size(); ++i) b(static_cast<Eigen::Index>(i)) = bias[i];
  return AffineMap(std::move(w), std::move(b));
}

AffineMap AffineMap::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return AffineMap(Matrix::Identity(n, n), Vector::Zero(n));
}

Vector AffineMap::apply(const Vector& x) const {
  if (x.size() != weights_.cols()) {
    throw DimensionMismatch("input of dimension " + std::to_string(x.size()) +
                            " given to affine map expecting " +
                            std::to_string(weights_.cols()));
  }
  return weights_ * x + bias_;
}

AffineMap AffineMap::compose(const AffineMap& inner) const {
  if (inner.output_dim() != input_dim()) {
    throw DimensionMismatch("cannot compose: inner output " +
                            std::to_string(inner.output_dim()) + " vs outer input " +
                            std::to_string(input_dim()));
  }
  return AffineMap(weights_ * inner.weights_, weights_ * inner.bias_ + bias_);
}

AffineMap AffineMap::mask_rows(const std::vector<bool>& keep) const {
  if (keep.size() != output_dim()) {
    throw DimensionMismatch("row mask length does not match affine output dimension");
  }
  Matrix w = weights_;
  Vector b = bias_;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (!keep[i]) {
      w.row(static_cast<Eigen::Index>(i)).setZero();
      b(static_cast<Eigen::Index>(i)) = 0.0;
    }
  }
  return AffineMap(std::move(w), std::move(b));
}

AffineMap AffineMap::pairwise_differences() const {
  const auto m = weights_.rows();
  const auto pairs = m * (m - 1) / 2;
  Matrix w(pairs, weights_.cols());
  Vector b(pairs);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j, ++r) {
      w.row(r) = weights_.row(i) - weights_.row(j);
      b(r) = bias_(i) - bias_(j);
    }
  }
  return AffineMap(std::move(w), std::move(b));
}

Vector relu(const Vector& x) { return x.cwiseMax(0.0); }

Vector softmax(const Vector& logits) {
  if (logits.size() == 0) return logits;
  const double shift = logits.maxCoeff();
  Vector e = (logits.array() - shift).exp().matrix();
  return e / e.sum();
}

std::size_t argmax_lowest(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

std::size_t argmax_lowest(const Vector& values) {
  return argmax_lowest(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())));
}

}  // namespace logifold
