#pragma once

// Exact arbitrary-precision integers and rationals. cpp_rational keeps
// gcd(|num|, den) = 1 and den > 0 as a representation invariant.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace polytor {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline std::string to_string(const BigInt& z) { return z.str(); }

inline std::string to_string(const Rational& r) {
  if (rat_den(r) == 1) return rat_num(r).str();
  return rat_num(r).str() + "/" + rat_den(r).str();
}

// Accepts "p" or "p/q" with optional leading signs.
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational: '" + s + "'");
  }
}

inline BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline BigInt lcm(const BigInt& a, const BigInt& b) { return boost::multiprecision::lcm(a, b); }

inline long lcm_long(long a, long b) {
  if (a == 0 || b == 0) return 0;
  return static_cast<long>(boost::multiprecision::lcm(BigInt(a), BigInt(b)));
}

}  // namespace polytor
