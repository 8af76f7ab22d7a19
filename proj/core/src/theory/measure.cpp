#include "logifold/theory/measure.hpp"

#include "logifold/error.hpp"

namespace logifold::theory {

std::size_t target_level(const Rational& x) {
  if (x <= 0 || x > 1) throw OutOfDomain("point " + to_string(x) + " not in (0,1]");
  std::size_t n = 0;
  Rational scaled = x * 2;
  while (scaled <= 1) {
    scaled *= 2;
    ++n;
  }
  return n;
}

std::uint8_t target_value(const Rational& x) { return target_level(x) % 2 == 0 ? 1 : 0; }

Rational target_measure_below(std::uint8_t v, const Rational& y) {
  if (y < 0 || y > 1) throw OutOfDomain("bound " + to_string(y) + " not in [0,1]");
  if (y == 0) return 0;
  const std::size_t m = target_level(y);
  // piece (2^-(m+1), y] inside E_m, then the full tail (0, 2^-(m+1)]
  const std::size_t k = m + 1;
  Rational ones = pow2_inv(k) * (k % 2 == 0 ? Rational(2, 3) : Rational(1, 3));
  if (m % 2 == 0) ones += y - pow2_inv(k);
  return v == 1 ? ones : y - ones;
}

Rational agreement_measure(const StepFunction& g) {
  Rational total = 0;
  for (std::size_t j = 0; j < g.interval_count(); ++j) {
    const std::uint8_t v = g.values()[j];
    total += target_measure_below(v, g.upper(j).value()) - target_measure_below(v, g.lower(j).value());
  }
  return total;
}

Rational disagreement_measure(const StepFunction& g) { return 1 - agreement_measure(g); }

}  // namespace logifold::theory
