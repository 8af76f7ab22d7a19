#include "logifold/sign_pattern.hpp"

#include "logifold/error.hpp"

namespace logifold {

SignPattern::SignPattern(std::string_view text) : signs_(text) {
  for (char c : signs_) {
    if (c != '+' && c != '-') {
      throw InvalidArgument("sign pattern may only contain '+' and '-': \"" + signs_ + "\"");
    }
  }
}

SignPattern SignPattern::of(const Vector& values) {
  SignPattern p;
  p.signs_.reserve(static_cast<std::size_t>(values.size()));
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    p.push_back(values(i) >= 0.0 ? Sign::NonNegative : Sign::Negative);
  }
  return p;
}

}  // namespace logifold
