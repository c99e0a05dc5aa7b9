#pragma once

// Exact rational arithmetic and the high-precision float used for the
// dimension exponent. All interval geometry in this library is exact; the
// only irrational quantities (gamma, series exponents) are carried as
// 100-digit floats with comparisons done at that precision.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace recur {

using BigInt = boost::multiprecision::cpp_int;
// Expression templates are switched off so values compose with std::min/max
// and friends; at these operand sizes the temporaries are cheap.
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;
using Float100 = boost::multiprecision::cpp_bin_float_100;

// Parses "p/q", integers, and plain decimals ("0.25", "-1.5").
Rational parse_rational(const std::string& text);

// Lowest-terms "p/q", or just "p" for integers.
std::string rational_str(const Rational& r);

double to_double(const Rational& r);
Float100 to_hp(const Rational& r);

// base^exp with negative exponents allowed; base must be nonzero when exp < 0.
Rational pow_rational(const Rational& base, long exp);

// Distance from r to the nearest integer.
Rational nearest_int_distance(const Rational& r);

// Deterministic round-to-nearest dyadic approximation with relative error
// at most 2^-bits. Exact for zero.
Rational dyadic_approx(const Float100& v, int bits = 76);

// Value plus a certified absolute error bound (error == 0 means exact).
struct Estimate {
  Rational value{0};
  Rational error{0};

  bool exact() const { return error == 0; }
  Estimate& operator+=(const Estimate& o) {
    value += o.value;
    error += o.error;
    return *this;
  }
};

}  // namespace recur
