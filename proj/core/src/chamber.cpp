#include "logifold/chamber.hpp"

#include "logifold/error.hpp"

#include <cmath>
#include <limits>

namespace logifold {

Box Box::cube(std::size_t dim, double lo, double hi) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Box{Vector::Constant(n, lo), Vector::Constant(n, hi)};
}

namespace {

constexpr double kPivotEps = 1e-12;
constexpr double kZeroRow = 1e-14;

// Two-phase tableau simplex. Column n of the tableau is the phase-one
// auxiliary variable, column n + 1 the right-hand side.
class Tableau {
 public:
  Tableau(const Matrix& a, const Vector& b, const Vector& c)
      : m_(static_cast<int>(a.rows())), n_(static_cast<int>(a.cols())),
        basic_(static_cast<std::size_t>(m_)), nonbasic_(static_cast<std::size_t>(n_ + 1)),
        d_(Matrix::Zero(m_ + 2, n_ + 2)) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) d_(i, j) = a(i, j);
      d_(i, n_) = -1.0;
      d_(i, n_ + 1) = b(i);
      basic_[static_cast<std::size_t>(i)] = n_ + i;
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[static_cast<std::size_t>(j)] = j;
      d_(m_, j) = -c(j);
    }
    nonbasic_[static_cast<std::size_t>(n_)] = -1;
    d_(m_ + 1, n_) = 1.0;
  }

  std::optional<double> solve() {
    int r = 0;
    for (int i = 1; i < m_; ++i) {
      if (d_(i, n_ + 1) < d_(r, n_ + 1)) r = i;
    }
    if (m_ > 0 && d_(r, n_ + 1) < -kPivotEps) {
      pivot(r, n_);
      if (!run(1) || d_(m_ + 1, n_ + 1) < -1e-9) return std::nullopt;
      for (int i = 0; i < m_; ++i) {
        if (basic_[static_cast<std::size_t>(i)] != -1) continue;
        int s = -1;
        for (int j = 0; j <= n_; ++j) {
          if (s == -1 || d_(i, j) < d_(i, s) ||
              (d_(i, j) == d_(i, s) && nonbasic_[static_cast<std::size_t>(j)] <
                                           nonbasic_[static_cast<std::size_t>(s)])) {
            s = j;
          }
        }
        pivot(i, s);
      }
    }
    if (!run(2)) return std::numeric_limits<double>::infinity();
    return d_(m_, n_ + 1);
  }

 private:
  void pivot(int r, int s) {
    const double inv = 1.0 / d_(r, s);
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      const double f = d_(i, s) * inv;
      if (f == 0.0) continue;
      for (int j = 0; j < n_ + 2; ++j) {
        if (j != s) d_(i, j) -= d_(r, j) * f;
      }
    }
    for (int j = 0; j < n_ + 2; ++j) {
      if (j != s) d_(r, j) *= inv;
    }
    for (int i = 0; i < m_ + 2; ++i) {
      if (i != r) d_(i, s) *= -inv;
    }
    d_(r, s) = inv;
    std::swap(basic_[static_cast<std::size_t>(r)], nonbasic_[static_cast<std::size_t>(s)]);
  }

  // Bland's rule: smallest-index improving column, smallest-index leaving row.
  bool run(int phase) {
    const int obj = phase == 1 ? m_ + 1 : m_;
    for (;;) {
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (phase == 2 && nonbasic_[static_cast<std::size_t>(j)] == -1) continue;
        if (d_(obj, j) < -kPivotEps &&
            (s == -1 || nonbasic_[static_cast<std::size_t>(j)] < nonbasic_[static_cast<std::size_t>(s)])) {
          s = j;
        }
      }
      if (s == -1) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (d_(i, s) < kPivotEps) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        const double lhs = d_(i, n_ + 1) / d_(i, s);
        const double rhs = d_(r, n_ + 1) / d_(r, s);
        if (lhs < rhs - kPivotEps ||
            (lhs <= rhs + kPivotEps && basic_[static_cast<std::size_t>(i)] < basic_[static_cast<std::size_t>(r)])) {
          r = i;
        }
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  int m_;
  int n_;
  std::vector<int> basic_;
  std::vector<int> nonbasic_;
  Matrix d_;
};

}  // namespace

std::optional<double> solve_lp(const Matrix& a, const Vector& b, const Vector& c) {
  if (a.rows() != b.size() || a.cols() != c.size()) {
    throw DimensionMismatch("linear program dimensions do not agree");
  }
  return Tableau(a, b, c).solve();
}

void ChamberConstraints::add(const AffineMap& map, const SignPattern& signs) {
  if (map.input_dim() != dim_) throw DimensionMismatch("chamber constraint input dimension");
  if (map.output_dim() != signs.size()) throw DimensionMismatch("sign pattern length");
  for (std::size_t i = 0; i < signs.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    add_row(map.weights().row(row).transpose(), map.bias()(row), signs[i]);
  }
}

void ChamberConstraints::add_row(const Vector& normal, double offset, Sign sign) {
  const double norm = normal.norm();
  if (norm < kZeroRow) {
    // Constant row: either always satisfied or never.
    const bool holds = sign == Sign::NonNegative ? offset >= 0.0 : offset < 0.0;
    if (!holds) contradictory_ = true;
    return;
  }
  normals_.push_back(normal / norm);
  offsets_.push_back(offset / norm);
  signs_.push_back(sign);
}

std::optional<double> ChamberConstraints::inradius(const std::optional<Box>& domain) const {
  if (contradictory_) return std::nullopt;
  if (domain && domain->dim() != dim_) throw DimensionMismatch("domain box dimension");

  // Variables: x+ (dim), x- (dim), r. Maximize r.
  const auto n = static_cast<Eigen::Index>(dim_);
  const auto rows = static_cast<Eigen::Index>(normals_.size()) + (domain ? 2 * n : 0) + 1;
  Matrix a = Matrix::Zero(rows, 2 * n + 1);
  Vector b = Vector::Zero(rows);
  Eigen::Index r = 0;
  for (std::size_t k = 0; k < normals_.size(); ++k, ++r) {
    // '+':  u.x + c >= r   ->  -u.x + r <= c
    // '-':  u.x + c <= -r  ->   u.x + r <= -c
    const double s = signs_[k] == Sign::NonNegative ? -1.0 : 1.0;
    a.block(r, 0, 1, n) = s * normals_[k].transpose();
    a.block(r, n, 1, n) = -s * normals_[k].transpose();
    a(r, 2 * n) = 1.0;
    b(r) = -s * offsets_[k];
  }
  if (domain) {
    for (Eigen::Index i = 0; i < n; ++i, r += 2) {
      a(r, i) = 1.0;
      a(r, n + i) = -1.0;
      a(r, 2 * n) = 1.0;
      b(r) = domain->upper(i);
      a(r + 1, i) = -1.0;
      a(r + 1, n + i) = 1.0;
      a(r + 1, 2 * n) = 1.0;
      b(r + 1) = -domain->lower(i);
    }
  }
  a(r, 2 * n) = 1.0;
  b(r) = 1.0;

  Vector c = Vector::Zero(2 * n + 1);
  c(2 * n) = 1.0;
  return solve_lp(a, b, c);
}

bool ChamberConstraints::has_interior(const std::optional<Box>& domain, double tolerance) const {
  const auto radius = inradius(domain);
  return radius && *radius > tolerance;
}

}  // namespace logifold
