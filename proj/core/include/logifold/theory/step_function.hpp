#pragma once

#include "logifold/theory/dyadic.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace logifold::theory {

// Piecewise-constant bit-valued function on (0, 1].
// values[0] holds on (b[0], 1], values[j] on (b[j], b[j-1]], values.back() on (0, b.back()].
class StepFunction {
 public:
  StepFunction() : values_{0} {}
  StepFunction(std::vector<DyadicRational> breakpoints, std::vector<std::uint8_t> values);

  static StepFunction constant(std::uint8_t v) { return StepFunction({}, {v}); }
  // Indicator of (a, 1].
  static StepFunction upper_indicator(const DyadicRational& a);
  // Bits alternate starting from `first` (the value on the top interval).
  static StepFunction alternating(std::vector<DyadicRational> breakpoints, std::uint8_t first);

  const std::vector<DyadicRational>& breakpoints() const { return breakpoints_; }
  const std::vector<std::uint8_t>& values() const { return values_; }
  std::size_t interval_count() const { return values_.size(); }
  DyadicRational upper(std::size_t j) const;  // 1 for j = 0
  DyadicRational lower(std::size_t j) const;  // 0 for the last interval

  // Throws OutOfDomain unless 0 < x <= 1.
  std::uint8_t at(const Rational& x) const;
  std::size_t discontinuities() const;
  // Merges adjacent intervals carrying the same bit.
  StepFunction coalesced() const;
  std::string str() const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  std::vector<DyadicRational> breakpoints_;
  std::vector<std::uint8_t> values_;
};

}  // namespace logifold::theory
