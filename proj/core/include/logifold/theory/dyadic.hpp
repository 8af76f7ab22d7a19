#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <string>

namespace logifold::theory {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// numerator / 2^exponent in [0, 1], kept canonical (odd numerator, or 0/2^0).
class DyadicRational {
 public:
  DyadicRational() = default;
  // Throws OutOfDomain when the value is negative or exceeds 1.
  DyadicRational(Integer numerator, std::size_t exponent);

  static DyadicRational pow2_inv(std::size_t m) { return DyadicRational(1, m); }  // 2^-m
  // Exact conversion; throws OutOfDomain if r is not dyadic or outside [0, 1].
  static DyadicRational from_rational(const Rational& r);

  const Integer& numerator() const { return numerator_; }
  std::size_t exponent() const { return exponent_; }
  Rational value() const;
  std::string str() const;  // "3/16", "0", "1"

  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

 private:
  Integer numerator_ = 0;
  std::size_t exponent_ = 0;
};

std::string to_string(const Rational& r);  // "5/6", "1", "0"
// Decimal expansion rounded half-up to `digits` fractional digits.
std::string to_decimal(const Rational& r, unsigned digits = 12);
Rational pow2_inv(std::size_t m);

}  // namespace logifold::theory
