#include "logifold/theory/dyadic.hpp"

#include "logifold/error.hpp"

namespace logifold::theory {

DyadicRational::DyadicRational(Integer numerator, std::size_t exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {
  if (numerator_ < 0) throw OutOfDomain("dyadic rational must be nonnegative");
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  while (exponent_ > 0 && (numerator_ & 1) == 0) {
    numerator_ >>= 1;
    --exponent_;
  }
  if (numerator_ > (Integer(1) << exponent_)) throw OutOfDomain("dyadic rational exceeds 1");
}

DyadicRational DyadicRational::from_rational(const Rational& r) {
  Integer den = boost::multiprecision::denominator(r);
  std::size_t exponent = 0;
  while ((den & 1) == 0) {
    den >>= 1;
    ++exponent;
  }
  if (den != 1) throw OutOfDomain(to_string(r) + " is not a dyadic rational");
  return DyadicRational(boost::multiprecision::numerator(r), exponent);
}

Rational DyadicRational::value() const { return Rational(numerator_, Integer(1) << exponent_); }

std::string DyadicRational::str() const { return to_string(value()); }

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  const Integer lhs = a.numerator_ << b.exponent_;
  const Integer rhs = b.numerator_ << a.exponent_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const Rational& r) {
  const Integer& den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

std::string to_decimal(const Rational& r, unsigned digits) {
  Integer scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  const bool negative = r < 0;
  const Rational a = negative ? Rational(-r) : r;
  const Integer num = boost::multiprecision::numerator(a) * scale * 2 +
                      boost::multiprecision::denominator(a);
  const Integer scaled = num / (boost::multiprecision::denominator(a) * 2);  // round half up
  std::string whole = Integer(scaled / scale).str();
  std::string frac = Integer(scaled % scale).str();
  if (frac.size() < digits) frac.insert(0, digits - frac.size(), '0');
  std::string out = (negative && scaled != 0 ? "-" : "") + whole;
  if (digits > 0) out += "." + frac;
  return out;
}

Rational pow2_inv(std::size_t m) { return Rational(Integer(1), Integer(1) << m); }

}  // namespace logifold::theory
