#pragma once

#include "logifold/theory/step_function.hpp"

#include <cstddef>
#include <cstdint>

namespace logifold::theory {

// n with 2^-(n+1) < x <= 2^-n. Throws OutOfDomain unless 0 < x <= 1.
std::size_t target_level(const Rational& x);
// 1 on E_n for even n, 0 for odd n.
std::uint8_t target_value(const Rational& x);
inline std::uint8_t target_value(const DyadicRational& x) { return target_value(x.value()); }

// Lebesgue measure of {f = v} within (0, y], y in [0, 1].
Rational target_measure_below(std::uint8_t v, const Rational& y);
// Exact measure of {x in (0,1] : f(x) = g(x)}.
Rational agreement_measure(const StepFunction& g);
Rational disagreement_measure(const StepFunction& g);

}  // namespace logifold::theory
