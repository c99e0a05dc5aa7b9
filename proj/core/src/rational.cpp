#include "recur/rational.hpp"

#include "recur/errors.hpp"

#include <cctype>
#include <cmath>

namespace recur {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) fail(Errc::parse_error, "empty rational literal");

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = (s[0] == '-');
    s.erase(0, 1);
  }
  if (s.empty()) fail(Errc::parse_error, "sign without digits");

  Rational value;
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      fail(Errc::parse_error, "malformed fraction '" + text + "'");
    }
    BigInt d(den);
    if (d == 0) fail(Errc::parse_error, "zero denominator in '" + text + "'");
    value = Rational(BigInt(num), d);
  } else if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (frac.empty()) frac = "0";
    if (!all_digits(whole) || !all_digits(frac)) {
      fail(Errc::parse_error, "malformed decimal '" + text + "'");
    }
    BigInt scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    value = Rational(BigInt(whole) * scale + BigInt(frac), scale);
  } else {
    if (!all_digits(s)) fail(Errc::parse_error, "malformed integer '" + text + "'");
    value = Rational(BigInt(s));
  }
  return negative ? -value : value;
}

std::string rational_str(const Rational& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Float100 to_hp(const Rational& r) {
  return Float100(numerator(r)) / Float100(denominator(r));
}

Rational pow_rational(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  if (exp < 0) {
    if (base == 0) fail(Errc::bad_argument, "0 to a negative power");
    return pow_rational(Rational(1) / base, -exp);
  }
  Rational acc(1);
  Rational b = base;
  unsigned long e = static_cast<unsigned long>(exp);
  while (e > 0) {
    if (e & 1ul) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

Rational nearest_int_distance(const Rational& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  BigInt q = num / den;  // truncation toward zero
  Rational best(2);
  for (BigInt k = q - 1; k <= q + 1; ++k) {
    Rational d = r - Rational(k);
    if (d < 0) d = -d;
    if (d < best) best = d;
  }
  return best;
}

Rational dyadic_approx(const Float100& v, int bits) {
  if (v == 0) return Rational(0);
  bool negative = v < 0;
  Float100 a = negative ? -v : v;
  int exp = 0;
  Float100 mant = frexp(a, &exp);  // mant in [0.5, 1)
  Float100 scaled = ldexp(mant, bits);
  BigInt num = static_cast<BigInt>(floor(scaled + Float100(0.5)));
  Rational r = Rational(num) * pow_rational(Rational(2), exp - bits);
  return negative ? -r : r;
}

}  // namespace recur
