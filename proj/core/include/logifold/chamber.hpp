#pragma once

#include "logifold/affine.hpp"
#include "logifold/sign_pattern.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace logifold {

// Axis-aligned input domain lower <= x <= upper.
struct Box {
  Vector lower;
  Vector upper;

  static Box cube(std::size_t dim, double lo, double hi);
  std::size_t dim() const { return static_cast<std::size_t>(lower.size()); }
};

// Conjunction of sign conditions on affine functions of x; an open-or-
// half-open polyhedral chamber (a . x + c >= 0 for '+', < 0 for '-').
class ChamberConstraints {
 public:
  explicit ChamberConstraints(std::size_t input_dim) : dim_(input_dim) {}

  void add(const AffineMap& map, const SignPattern& signs);
  void add_row(const Vector& normal, double offset, Sign sign);

  std::size_t input_dim() const { return dim_; }
  std::size_t size() const { return signs_.size(); }

  // Largest r <= 1 such that a ball of radius r (inside the domain, when
  // given) satisfies every condition strictly. nullopt when even the
  // closed chamber is empty.
  std::optional<double> inradius(const std::optional<Box>& domain) const;

  // True when the chamber has nonempty interior, i.e. positive measure.
  bool has_interior(const std::optional<Box>& domain, double tolerance = 1e-9) const;

 private:
  std::size_t dim_;
  std::vector<Vector> normals_;
  std::vector<double> offsets_;
  std::vector<Sign> signs_;
  bool contradictory_ = false;
};

// maximize c.y subject to A y <= b, y >= 0. Bland's rule; nullopt if
// infeasible, +inf if unbounded.
std::optional<double> solve_lp(const Matrix& a, const Vector& b, const Vector& c);

}  // namespace logifold
