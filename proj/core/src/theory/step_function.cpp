#include "logifold/theory/step_function.hpp"

#include "logifold/error.hpp"

#include <algorithm>

namespace logifold::theory {

StepFunction::StepFunction(std::vector<DyadicRational> breakpoints, std::vector<std::uint8_t> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.size() != breakpoints_.size() + 1)
    throw InvalidArgument("step function needs one more value than breakpoints");
  for (auto v : values_)
    if (v > 1) throw InvalidArgument("step function values must be bits");
  const DyadicRational zero, one(1, 0);
  for (std::size_t j = 0; j < breakpoints_.size(); ++j) {
    if (breakpoints_[j] <= zero || breakpoints_[j] >= one)
      throw OutOfDomain("breakpoint " + breakpoints_[j].str() + " not in (0,1)");
    if (j > 0 && !(breakpoints_[j] < breakpoints_[j - 1]))
      throw InvalidArgument("breakpoints must be strictly decreasing");
  }
}

StepFunction StepFunction::upper_indicator(const DyadicRational& a) { return StepFunction({a}, {1, 0}); }

StepFunction StepFunction::alternating(std::vector<DyadicRational> breakpoints, std::uint8_t first) {
  std::vector<std::uint8_t> values(breakpoints.size() + 1);
  for (std::size_t j = 0; j < values.size(); ++j) values[j] = static_cast<std::uint8_t>((first + j) % 2);
  return StepFunction(std::move(breakpoints), std::move(values));
}

DyadicRational StepFunction::upper(std::size_t j) const {
  return j == 0 ? DyadicRational(1, 0) : breakpoints_.at(j - 1);
}

DyadicRational StepFunction::lower(std::size_t j) const {
  return j < breakpoints_.size() ? breakpoints_[j] : DyadicRational();
}

std::uint8_t StepFunction::at(const Rational& x) const {
  if (x <= 0 || x > 1) throw OutOfDomain("point " + to_string(x) + " not in (0,1]");
  // first breakpoint strictly below x marks the interval
  auto it = std::find_if(breakpoints_.begin(), breakpoints_.end(),
                         [&](const DyadicRational& b) { return b.value() < x; });
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

std::size_t StepFunction::discontinuities() const {
  std::size_t n = 0;
  for (std::size_t j = 1; j < values_.size(); ++j) n += values_[j] != values_[j - 1];
  return n;
}

StepFunction StepFunction::coalesced() const {
  std::vector<DyadicRational> b;
  std::vector<std::uint8_t> v{values_[0]};
  for (std::size_t j = 0; j < breakpoints_.size(); ++j) {
    if (values_[j + 1] == v.back()) continue;
    b.push_back(breakpoints_[j]);
    v.push_back(values_[j + 1]);
  }
  return StepFunction(std::move(b), std::move(v));
}

std::string StepFunction::str() const {
  std::string out = std::to_string(values_[0]);
  for (std::size_t j = 0; j < breakpoints_.size(); ++j)
    out += " |" + breakpoints_[j].str() + "| " + std::to_string(values_[j + 1]);
  return out;
}

}  // namespace logifold::theory
