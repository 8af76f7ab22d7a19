#pragma once

#include "logifold/affine.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace logifold {

enum class Sign : char { NonNegative = '+', Negative = '-' };

// One sign per output coordinate of a decider. Chambers are half-open:
// a coordinate equal to zero is NonNegative.
class SignPattern {
 public:
  SignPattern() = default;
  explicit SignPattern(std::string_view text);  // "+-+"

  static SignPattern of(const Vector& values);

  std::size_t size() const { return signs_.size(); }
  bool empty() const { return signs_.empty(); }
  Sign operator[](std::size_t i) const { return static_cast<Sign>(signs_[i]); }
  bool nonnegative(std::size_t i) const { return signs_[i] == '+'; }

  void push_back(Sign s) { signs_.push_back(static_cast<char>(s)); }

  const std::string& str() const { return signs_; }

  friend bool operator==(const SignPattern&, const SignPattern&) = default;
  friend auto operator<=>(const SignPattern&, const SignPattern&) = default;

 private:
  std::string signs_;
};

}  // namespace logifold

template <>
struct std::hash<logifold::SignPattern> {
  std::size_t operator()(const logifold::SignPattern& p) const noexcept {
    return std::hash<std::string>{}(p.str());
  }
};
